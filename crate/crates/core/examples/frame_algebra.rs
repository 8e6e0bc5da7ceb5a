//! Propositions as sets over a frame, and translating logical queries into them.

use std::collections::HashMap;

use evident::{translate_logical, Frame, QueryExpr};

fn main() -> evident::Result<()> {
    let frame = Frame::new(["lake", "tower", "ridge", "clear"])?;
    let water = frame.proposition(["lake"])?;
    let structure = frame.proposition(["tower", "ridge"])?;

    println!("frame:        {}", frame.describe(&frame.full())?);
    println!("water:        {}", frame.describe(&water)?);
    println!("not water:    {}", frame.describe(&water.complement())?);
    println!("either:       {}", frame.describe(&water.union(&structure)?)?);
    println!("both:         {}", frame.describe(&water.intersect(&structure)?)?);
    println!("water ⊆ ¬structure: {}", water.is_subset(&structure.complement())?);

    let mut meaning = HashMap::new();
    meaning.insert("wet".to_string(), water);
    meaning.insert("tall".to_string(), structure);
    let q = QueryExpr::implies(QueryExpr::atom("tall"), QueryExpr::atom("wet"));
    let p = translate_logical(&q, &frame, &meaning)?;
    println!("{q}  =>  {}", frame.describe(&p)?);
    Ok(())
}
