//! Poll a registry of data sources for a query, then split the query across the shortlist.

use evident::routing::{decompose, make_view, parse_query, parse_sources, poll, shortlisted};
use evident::{answerability, SourceDescriptor};

fn main() -> evident::Result<()> {
    let query = parse_query(include_str!("../fixtures/query.json"))?;
    let sources = parse_sources(include_str!("../fixtures/sources.json"))?;

    println!("query: {query}");
    let polled = poll(&query, &sources, 0.5)?;
    println!("{} of {} sources can plausibly answer:", polled.len(), sources.len());
    for p in &polled {
        println!("  {:<20} priority {:>2}  {}", p.id, p.priority, p.interval);
    }

    let plan = decompose(&query, &shortlisted(&polled, &sources))?;
    for a in &plan.assignments {
        println!("  {} -> {} (support {:.4})", a.fragment, a.source, a.support);
    }
    println!("total support {:.4}", plan.total_support);

    // two same-schema replicas merged into a view answer at least as well as either
    let attrs = ["terrain_elevation", "obstacle_height", "threat_zone", "landing_zone"];
    let parts = [
        SourceDescriptor::new("replica_east", 2, attrs.into_iter().zip([0.9, 0.5, 0.3, 0.7]))?,
        SourceDescriptor::new("replica_west", 1, attrs.into_iter().zip([0.6, 0.8, 0.4, 0.2]))?,
    ];
    let view = make_view("replicas", &parts)?;
    for s in parts.iter().chain([&view]) {
        println!("  {:<20} priority {}  {}", s.id, s.priority, answerability(&query, s)?);
    }
    Ok(())
}
