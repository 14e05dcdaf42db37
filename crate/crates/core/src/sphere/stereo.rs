use num_complex::Complex64;

use super::SpherePoint;

/// Inverse stereographic projection `C -> S^2`,
/// `z -> (2 Re z, 2 Im z, |z|^2 - 1) / (1 + |z|^2)`.
///
/// `z = 0` goes to the south pole and the point at infinity (any non-finite
/// `z`) to the north pole. For `|z| > 1` the formula is evaluated through
/// `w = 1/z` so that huge moduli stay accurate.
pub fn inverse_stereographic(z: Complex64) -> SpherePoint {
    if !z.re.is_finite() || !z.im.is_finite() {
        return SpherePoint::north_pole(2);
    }
    let r2 = z.norm_sqr();
    if r2 <= 1.0 {
        let den = 1.0 + r2;
        SpherePoint::from_unit(vec![2.0 * z.re / den, 2.0 * z.im / den, (r2 - 1.0) / den])
    } else {
        let w = z.inv();
        let w2 = w.norm_sqr();
        let den = 1.0 + w2;
        // 2z/(1+|z|^2) = 2 conj(w)/(1+|w|^2)
        SpherePoint::from_unit(vec![2.0 * w.re / den, -2.0 * w.im / den, (1.0 - w2) / den])
    }
}

/// Forward stereographic projection `S^2 -> C`; `None` at the north pole.
pub fn stereographic(p: &SpherePoint) -> Option<Complex64> {
    let c = p.coords();
    assert_eq!(c.len(), 3, "stereographic projection is defined on S^2 only");
    let (x, y, z) = (c[0], c[1], c[2]);
    if z <= 0.0 {
        Some(Complex64::new(x, y) / (1.0 - z))
    } else {
        // (x + iy)/(1 - z) = (1 + z)/(x - iy)
        let den = Complex64::new(x, -y);
        if den.norm_sqr() == 0.0 {
            None
        } else {
            Some(Complex64::new(1.0 + z, 0.0) / den)
        }
    }
}
