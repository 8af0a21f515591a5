//! Neuron counts needed for a target tolerance as p and ε vary.

use ridgekit::harness::plan_neurons;

fn main() -> ridgekit::error::Result<()> {
    let (c2, c3, m) = (1.0, 2.0, 3);
    print!("{:>6}", "ε \\ p");
    let ps = [1.25, 1.5, 2.0, 3.0];
    for p in ps {
        print!(" {p:>12}");
    }
    println!();
    for eps in [0.5, 0.2, 0.1, 0.05] {
        print!("{eps:>6}");
        for p in ps {
            print!(" {:>12}", plan_neurons(c2, c3, m, p, eps)?);
        }
        println!();
    }
    Ok(())
}
