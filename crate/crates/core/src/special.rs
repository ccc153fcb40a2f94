//! Special functions.

/// B_{2j} / (2j)! for j = 1..=8.
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
];

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k + a)^{-s}` for `s > 1`, `a > 0`.
///
/// Sums the head directly until `k + a ≥ 16` and closes the series with the
/// Euler–Maclaurin tail, which is accurate to roughly machine precision for
/// moderate `s`.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    assert!(s > 1.0, "hurwitz_zeta needs s > 1, got {s}");
    assert!(a > 0.0, "hurwitz_zeta needs a > 0, got {a}");
    let cutoff = 16.0 + s;
    let mut head = 0.0;
    let mut x = a;
    while x < cutoff {
        head += x.powf(-s);
        x += 1.0;
    }
    // x = N + a
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // rising factorial s (s+1) … (s+2j-2) times x^{-s-2j+1}
    let mut factor = s * x.powf(-s - 1.0);
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = coeff * factor;
        tail += term;
        if term.abs() < 1e-18 * tail.abs() {
            break;
        }
        let p = 2.0 * (j + 1) as f64;
        factor *= (s + p - 1.0) * (s + p) / (x * x);
    }
    head + tail
}
