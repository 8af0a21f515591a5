//! A hand-built network, its partial derivatives and its text form.

use ridgekit::activations::Activation;
use ridgekit::network::{Network, Neuron};

fn main() -> ridgekit::error::Result<()> {
    let net = Network::new(
        Activation::Sigmoid,
        2,
        1,
        vec![
            Neuron {
                y: vec![1.5],
                a: vec![1.0, -0.5],
                b: 0.2,
            },
            Neuron {
                y: vec![-0.75],
                a: vec![0.3, 2.0],
                b: -1.0,
            },
        ],
    )?;
    let u = [0.4, -0.2];
    println!("φ(u) = {:.8}", net.eval(&u)?[0]);
    for alpha in [[1, 0], [0, 1], [1, 1], [2, 0]] {
        println!("∂^{alpha:?} φ(u) = {:.8}", net.partial(&alpha, &u)?[0]);
    }
    let text = net.to_text();
    print!("\n{text}");
    assert_eq!(Network::from_text(&text)?, net);
    Ok(())
}
