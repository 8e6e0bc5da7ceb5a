//! The decision rule: decided, leaning, or conflicted.

use evident::decision::{decide, singleton_intervals, DEFAULT_CONFLICT_THRESHOLD};
use evident::{combine, support_pro_con, CombinationReport, Frame, MassFunction};

fn main() -> evident::Result<()> {
    let frame = Frame::new(["lake", "tower"])?;
    let ss = |atom: &str, s: f64| MassFunction::simple_support(&frame, frame.proposition([atom])?, s);

    let cases = [
        ("strong lake", CombinationReport { result: ss("lake", 0.9)?, conflict: 0.0 }),
        ("lake vs tower", combine(&ss("lake", 0.7)?, &ss("tower", 0.6)?)?),
        ("even split", combine(&ss("lake", 0.5)?, &ss("tower", 0.5)?)?),
        ("near contradiction", combine(&ss("lake", 0.99)?, &ss("tower", 0.98)?)?),
    ];
    for (name, report) in &cases {
        let d = decide(report, DEFAULT_CONFLICT_THRESHOLD)?;
        let ivs: Vec<String> = singleton_intervals(&report.result)
            .iter()
            .map(|(a, iv)| format!("{a} {iv}"))
            .collect();
        println!("{name:<20} κ={:.4}  {}  -> {}", d.cumulative_conflict, ivs.join("  "), d.status);
    }

    let lake = frame.proposition(["lake"])?;
    let t = support_pro_con(&cases[1].1.result, &lake)?;
    println!("lake: pro {:.4}, con {:.4}, uncommitted {:.4}", t.pro, t.con, t.uncommitted);
    Ok(())
}
