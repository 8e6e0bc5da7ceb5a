//! Belief and plausibility intervals for simple-support, Bayesian and general masses.

use evident::{Frame, MassFunction};

fn main() -> evident::Result<()> {
    let frame = Frame::new(["lake", "tower", "ridge"])?;
    let lake = frame.proposition(["lake"])?;
    let wet_or_high = frame.proposition(["lake", "ridge"])?;

    let ss = MassFunction::simple_support(&frame, lake, 0.6)?;
    println!("simple support of {{lake}} at 0.6: {ss}");
    for p in [lake, wet_or_high, lake.complement(), frame.full()] {
        println!("  {:<16} {}", frame.describe(&p)?, ss.interval(&p)?);
    }

    let prior = MassFunction::bayesian(&frame, [("lake", 0.5), ("tower", 0.3), ("ridge", 0.2)])?;
    println!("bayesian: every singleton interval is a point");
    for i in 0..frame.len() {
        let iv = prior.interval(&frame.singleton(i))?;
        println!("  {:<16} {iv} point={}", frame.atoms()[i], iv.is_point());
    }

    let general = MassFunction::new(&frame, [(lake, 0.3), (wet_or_high, 0.5), (frame.full(), 0.2)])?;
    println!("general mass: {general}");
    for p in [lake, wet_or_high] {
        let iv = general.interval(&p)?;
        println!("  {:<16} {iv} ignorance {:.2}", frame.describe(&p)?, iv.ignorance());
    }
    Ok(())
}
