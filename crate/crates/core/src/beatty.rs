//! Golden-ratio Beatty sequences `A_n = floor(n * phi)` and
//! `B_n = floor(n * phi^2) = A_n + n`, in exact integer arithmetic.
//!
//! `n * phi = (n + n * sqrt 5) / 2` and `n * sqrt 5` is irrational for
//! `n >= 1`, so `floor(n * phi) = floor((n + isqrt(5 n^2)) / 2)`.

use serde::Serialize;

/// Largest `n` accepted by [`a_n`]; keeps `5 n^2` inside `u128`.
pub const MAX_INDEX: u64 = 1 << 61;

/// Floor of the square root: the largest `r` with `r * r <= v`.
pub fn isqrt(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    // initial guess at or above the root, then Newton steps downward
    let bits = 128 - v.leading_zeros();
    let mut x: u128 = 1 << bits.div_ceil(2);
    loop {
        let y = (x + v / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    // exact correction
    while x * x > v {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= v) {
        x += 1;
    }
    x
}

/// `A_n = floor(n * phi)`. Panics if `n > MAX_INDEX`.
pub fn a_n(n: u64) -> u64 {
    assert!(n <= MAX_INDEX, "Beatty index {n} too large");
    let n = n as u128;
    ((n + isqrt(5 * n * n)) / 2) as u64
}

/// `B_n = floor(n * phi^2) = A_n + n`.
pub fn b_n(n: u64) -> u64 {
    a_n(n) + n
}

/// Which of the two complementary sequences a positive integer belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    /// `m = A_n` for some `n >= 1`.
    A,
    /// `m = B_n` for some `n >= 1`.
    B,
}

/// The `n >= 1` with `A_n = m`, if any.
pub fn a_index(m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    // floor((m + 1) / phi) = A_{m+1} - (m + 1)
    let guess = a_n(m + 1) - (m + 1);
    (guess.saturating_sub(1)..=guess + 1).find(|&n| n >= 1 && a_n(n) == m)
}

/// The `n >= 1` with `B_n = m`, if any.
pub fn b_index(m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    // m / phi^2 = m * (2 - phi) ~ 2m - A_m
    let approx = (2 * m).saturating_sub(a_n(m));
    (approx.saturating_sub(1)..=approx + 1).find(|&n| n >= 1 && b_n(n) == m)
}

/// Classifies `m >= 1` as a member of `{A_n}` or `{B_n}`. Returns `None`
/// for `m = 0`, which is the zeroth term of both.
pub fn classify(m: u64) -> Option<Membership> {
    if m == 0 {
        return None;
    }
    if a_index(m).is_some() {
        Some(Membership::A)
    } else {
        debug_assert!(b_index(m).is_some());
        Some(Membership::B)
    }
}

/// Whether the fractional part `{phi * m}` is below `2 - phi`.
///
/// `A_{m+1} - A_m = floor({phi m} + phi)`, which is 1 exactly when
/// `{phi m} < 2 - phi` and 2 otherwise.
pub fn frac_phi_below(m: u64) -> bool {
    a_n(m + 1) - a_n(m) == 1
}

/// One `n, A_n, B_n` row per index in `0..=max`, as CSV.
pub fn write_csv<W: std::io::Write>(max: u64, mut out: W) -> std::io::Result<()> {
    writeln!(out, "n,A_n,B_n")?;
    for n in 0..=max {
        let a = a_n(n);
        writeln!(out, "{},{},{}", n, a, a + n)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `phi * 2^64` truncated, from the decimal expansion
    /// 1.6180339887498948482045868343656381177...
    const PHI_Q64: u128 = 0x1_9E37_79B9_7F4A_7C15;

    fn a_fixed(n: u64) -> u64 {
        ((n as u128 * PHI_Q64) >> 64) as u64
    }

    #[test]
    fn isqrt_small_and_edges() {
        for v in 0u128..10_000 {
            let r = isqrt(v);
            assert!(r * r <= v && (r + 1) * (r + 1) > v, "{v}");
        }
        let big = u128::MAX;
        let r = isqrt(big);
        assert_eq!(r, u64::MAX as u128);
        for v in [(1u128 << 126) - 1, 1 << 126, 5 * (MAX_INDEX as u128).pow(2)] {
            let r = isqrt(v);
            assert!(r * r <= v && (r + 1) * (r + 1) > v);
        }
    }

    #[test]
    fn examples() {
        assert_eq!(a_n(0), 0);
        assert_eq!(a_n(1), 1);
        assert_eq!(a_n(4), 6);
        assert_eq!(b_n(0), 0);
        assert_eq!(b_n(1), 2);
        assert_eq!(b_n(2), 5);
        assert_eq!(classify(1), Some(Membership::A));
        assert_eq!(classify(2), Some(Membership::B));
        assert_eq!(classify(6), Some(Membership::A));
        assert_eq!(classify(0), None);
        assert!(frac_phi_below(0));
        assert!(frac_phi_below(2));
        assert!(!frac_phi_below(1));
    }

    #[test]
    fn fixed_point_oracle_agrees() {
        // n * 2^-64 truncation error stays far below the distance of
        // n * phi to the nearest integer for n <= 10^6
        for n in 0..=1_000_000u64 {
            assert_eq!(a_n(n), a_fixed(n), "{n}");
        }
    }

    #[test]
    fn classify_matches_enumeration() {
        let n_max = 3000u64;
        let mut owner = vec![None; (b_n(n_max) + 1) as usize];
        for n in 1..=n_max {
            owner[a_n(n) as usize] = Some(Membership::A);
            owner[b_n(n) as usize] = Some(Membership::B);
        }
        for m in 1..=a_n(n_max) {
            assert_eq!(classify(m), owner[m as usize], "{m}");
            let ai = a_index(m);
            assert_eq!(ai.is_some(), owner[m as usize] == Some(Membership::A));
            if let Some(n) = ai {
                assert_eq!(a_n(n), m);
            }
            if let Some(n) = b_index(m) {
                assert_eq!(b_n(n), m);
            } else {
                assert_eq!(owner[m as usize], Some(Membership::A));
            }
        }
    }

    #[test]
    fn csv_dump() {
        let mut out = Vec::new();
        write_csv(3, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "n,A_n,B_n\n0,0,0\n1,1,2\n2,3,5\n3,4,7\n");
    }
}
