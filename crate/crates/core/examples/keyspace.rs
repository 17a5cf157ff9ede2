//! Key space size for a few per-component resolutions.

use std::num::NonZeroU32;

use rossler_machine::keys::keyspace_bits;

fn main() {
    for bits in [1, 8, 16, 32, 52, 64] {
        let n = NonZeroU32::new(bits).unwrap();
        println!("{bits:>2} bits per component -> 2^{}", keyspace_bits(n));
    }
}
