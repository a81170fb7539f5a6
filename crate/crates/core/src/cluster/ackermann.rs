//! Ackermann's function in Tarjan's variant and its inverse.
//!
//! `A(0, j) = 2j`, `A(i, 0) = 0`, `A(i, 1) = 2`, `A(i, j) = A(i-1, A(i, j-1))`, and
//! `alpha(n) = min { i : A(i, 4) >= log2 n }`.

use num_bigint::BigUint;

/// `A(i, j)`, or `None` when the value does not fit in a `u64`.
pub fn ackermann(i: u32, j: u64) -> Option<u64> {
    if i == 0 {
        return j.checked_mul(2);
    }
    match j {
        0 => Some(0),
        1 => Some(2),
        _ => {
            // Unroll the recursion in j: A(i, k) = A(i-1, A(i, k-1)).
            let mut value = 2u64;
            for _ in 2..=j {
                value = ackermann(i - 1, value)?;
            }
            Some(value)
        }
    }
}

/// `alpha(n)` for `n >= 1`. Never exceeds 2 on a `u64`.
pub fn inverse_ackermann(n: u64) -> u32 {
    assert!(n >= 1, "inverse_ackermann is defined for n >= 1");
    inverse_ackermann_big(&BigUint::from(n))
}

/// `alpha(n)` on arbitrary-precision input, so the `A(2, 4) = 65536` boundary can be
/// reached.
pub fn inverse_ackermann_big(n: &BigUint) -> u32 {
    assert!(*n >= BigUint::from(1u8), "inverse_ackermann is defined for n >= 1");
    // A(i, 4) >= log2 n  <=>  n <= 2^A(i, 4)  <=>  bits(n - 1) <= A(i, 4)
    let bits = (n - 1u8).bits();
    (0..)
        .find(|&i| ackermann(i, 4).is_none_or(|a| bits <= a))
        .expect("A(i, 4) eventually overflows")
}
