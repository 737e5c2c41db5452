//! Checks every state decomposition used by the two protocols.
//!
//! cargo run -p ghz-qsdc --example identities

use ghz_qsdc::harness::verify_identities;

fn main() -> ghz_qsdc::Result<()> {
    let residuals = verify_identities()?;
    for r in &residuals {
        println!("{:<4} 1 - F = {:.2e}  {}", r.id, r.residual, r.description);
    }
    let failing = residuals.iter().filter(|r| !r.holds()).count();
    println!("{} identities, {failing} failing", residuals.len());
    Ok(())
}
