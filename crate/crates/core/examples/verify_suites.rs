//! The property suites, clean and with a deliberately broken step.

use tridiag_shift::experiments::{cmd_verify, VerifyOptions};

fn main() {
    print!("{}", cmd_verify(&VerifyOptions::default()).to_text());
    println!();
    let broken = VerifyOptions {
        inject_bug: true,
        ..VerifyOptions::default()
    };
    print!("{}", cmd_verify(&broken).to_text());
}
