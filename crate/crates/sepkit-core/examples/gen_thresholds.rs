use sepkit_core::families::{minimal_passing_m, VerifyOptions};

fn main() {
    let opts = VerifyOptions::default();
    println!("d,min_passing_M");
    for d in 2..=10u32 {
        match minimal_passing_m(d, 256, &opts) {
            Some(m) => println!("{d},{m}"),
            None => println!("{d},>256"),
        }
    }
}
