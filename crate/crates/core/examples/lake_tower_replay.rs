//! Replay the lake/tower sensor scenario and print its trace as a table.

use evident::{emit_trace, load_scenario, run_scenario, ScenarioSettings, TraceFormat};

fn main() -> evident::Result<()> {
    let scenario = load_scenario(include_str!("../fixtures/lake_tower.json"))?;
    println!("{} reports over {:?}", scenario.reports().len(), scenario.frame().atoms());
    print!("{}", emit_trace(&run_scenario(&scenario)?, TraceFormat::Table)?);

    // older reports fade when the discount rate is below one
    let fading = scenario.with_settings(ScenarioSettings { discount_rate: 0.9, window: 30.0, step: 10.0, ..Default::default() })?;
    println!();
    print!("{}", emit_trace(&run_scenario(&fading)?, TraceFormat::Table)?);
    Ok(())
}
