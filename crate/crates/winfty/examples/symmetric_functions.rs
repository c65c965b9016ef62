//! Schur and Jack polynomials in power sums, and their inner products.

use winfty::symfun::{hall_inner, jack, schur, GrowthPath, InnerProductSpec, Partition};

fn main() -> winfty::Result<()> {
    let l = Partition::parse("2,2")?;
    println!("S{} = {}", l, schur(&l, 4));

    let l = Partition::parse("2,1")?;
    let y = jack(&l, None)?;
    println!("Y{} = {}", l, y);

    // The normalization depends on the order in which boxes are added.
    let a = jack(&l, Some(&GrowthPath::parse("h1,h2")?))?;
    let b = jack(&l, Some(&GrowthPath::parse("h2,h1")?))?;
    println!("Y{}[h1,h2] = {}", l, a);
    println!("Y{}[h2,h1] = {}", l, b);

    let spec = InnerProductSpec::jack();
    let y3 = jack(&Partition::parse("3")?, None)?;
    println!("<Y(2,1), Y(3)> = {}", hall_inner(&y, &y3, &spec));
    println!("<Y(2,1), Y(2,1)> = {}", hall_inner(&y, &y, &spec));
    Ok(())
}
