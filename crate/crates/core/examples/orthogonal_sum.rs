//! Combining independent bodies of evidence, measuring conflict, and discounting.

use evident::{combine, combine_all, discount, Frame, MassFunction};

fn main() -> evident::Result<()> {
    let frame = Frame::new(["lake", "tower"])?;
    let lake = MassFunction::simple_support(&frame, frame.proposition(["lake"])?, 0.7)?;
    let tower = MassFunction::simple_support(&frame, frame.proposition(["tower"])?, 0.6)?;

    let r = combine(&lake, &tower)?;
    println!("lake 0.7 ⊕ tower 0.6");
    println!("  conflict {:.6}", r.conflict);
    for (p, m) in r.result.focals() {
        println!("  m({}) = {m:.6}", frame.describe(&p)?);
    }

    // a sensor trusted at 50% contributes half its committed mass
    let weak = discount(&tower, 0.5)?;
    let r = combine(&lake, &weak)?;
    println!("with the tower report discounted to 0.5: conflict {:.6}", r.conflict);

    let agreeing: Vec<MassFunction> = [0.3, 0.4, 0.5]
        .iter()
        .map(|&s| MassFunction::simple_support(&frame, frame.proposition(["lake"]).unwrap(), s))
        .collect::<Result<_, _>>()?;
    let r = combine_all(&agreeing)?;
    println!(
        "three agreeing reports on lake: m(lake) = {:.6} (1 - 0.7·0.6·0.5 = {:.6})",
        r.result.mass(&frame.proposition(["lake"])?)?,
        1.0 - 0.7 * 0.6 * 0.5
    );
    Ok(())
}
