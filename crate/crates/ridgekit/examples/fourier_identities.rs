//! Distributional Fourier pairings of each activation, then the moments of
//! ψ and the admissibility constants.

use ridgekit::activations::{pairing_check, Activation, PairingQuad, CATALOG};
use ridgekit::harness::standard_test_functions;
use ridgekit::profile::RidgeletProfile;
use ridgekit::ridgelet::{admissibility_constant, admissibility_lower_bound};

fn main() -> ridgekit::error::Result<()> {
    let quad = PairingQuad::default();
    println!("pairing residuals |<σ, φ̂> − <σ̂, φ>|");
    for act in CATALOG {
        for t in standard_test_functions() {
            println!(
                "  {:<9} {:<36} {:.2e}",
                act.name(),
                t.label(),
                pairing_check(act, &t, &quad)?
            );
        }
    }

    let profile = RidgeletProfile::standard();
    println!("\nmoments of ψ");
    for j in 0..=5 {
        println!("  j = {j}: {:.2e}", profile.moment(j));
    }

    println!("\nadmissibility constants");
    for act in [Activation::Tanh, Activation::Sigmoid, Activation::Relu] {
        for m in 1..=3 {
            let c = admissibility_constant(&profile, act, m)?;
            let lb = admissibility_lower_bound(&profile, act, m)?;
            println!(
                "  {:<8} m = {m}: C = {:+.4e}{:+.4e}i  |C| ≥ {lb:.4e}",
                act.name(),
                c.re,
                c.im
            );
        }
    }
    Ok(())
}
