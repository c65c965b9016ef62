//! W(1+infinity) currents built from N free bosons and their OPEs,
//! computed by Wick contraction.

use winfty::vertex::{catalog, verify_spec, Regime, Workspace};

fn main() -> winfty::Result<()> {
    let mut ws = Workspace::new();
    let o = ws.ope("V2", "V2", Regime::GENERIC, 2)?;
    for (r, f) in o.poles.iter().rev() {
        println!("V2(z) V2(w) ~ ({}) / (z-w)^{}", f, r);
    }

    for s in catalog().iter().filter(|s| s.id == "v2v3" || s.id == "v1v4") {
        let c = verify_spec(&mut ws, s)?;
        println!("{} at N = {:?}: {}", c.id, c.ns, if c.holds { "holds" } else { "fails" });
    }
    Ok(())
}
