//! From Poisson brackets of the currents to the KP equation and its
//! bilinear form, for the Jack variant.

use winfty::kp::tau::{derived_s, dispersion, log_tau_certificate};
use winfty::kp::{eliminate, kp_flows, BracketTable, ModeSource, Variant, BRACKET_PAIRS};

fn main() -> winfty::Result<()> {
    let v = Variant::Jack;
    let mut src = ModeSource::new(v);
    let modes = src.mode_table()?;
    for line in modes.describe() {
        println!("mode {}", line);
    }
    let brackets = BracketTable::derive(&mut src, &modes, &BRACKET_PAIRS)?;
    let flows = kp_flows(&brackets)?;
    for f in &flows {
        println!("{} = {}", f.label(), f.rhs);
    }
    let e = eliminate(v, &flows)?;
    println!("KP: {} = 0", e.kp);
    println!("rescaled: {} = 0", e.kp_rescaled);
    let (c, s) = log_tau_certificate(&dispersion(&e.kp_rescaled)?)?;
    println!("u = ({}) (log tau)_xx with s = {}", c, s);
    println!("s on the Miura line: {}", derived_s(&e)?);
    Ok(())
}
