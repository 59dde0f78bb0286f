/// A rational cut threshold `d = num / den`; a cut is d-weak when it is below d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub num: i128,
    pub den: i128,
}

/// A rational epsilon `num / den` with `0 < eps < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Epsilon {
    pub num: i64,
    pub den: i64,
}

impl Epsilon {
    pub fn from_f64(eps: f64) -> Self {
        assert!(eps > 0.0 && eps < 1.0, "epsilon must lie in (0, 1)");
        let den = 1_000_000;
        Epsilon { num: ((eps * den as f64).round() as i64).max(1), den }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Epsilon {
    fn default() -> Self {
        Epsilon { num: 1, den: 100 }
    }
}

impl Threshold {
    pub fn from_ratio(num: i128, den: i128) -> Self {
        assert!(den > 0);
        Threshold { num, den }
    }

    pub fn integer(d: i64) -> Self {
        Threshold { num: d as i128, den: 1 }
    }

    /// `(1 + eps) * lambda`, or 1 when `lambda` is zero.
    pub fn near_mincut(lambda: i64, eps: Epsilon) -> Self {
        if lambda == 0 {
            return Threshold::integer(1);
        }
        Threshold { num: lambda as i128 * (eps.den + eps.num) as i128, den: eps.den as i128 }
    }

    pub fn is_weak(self, cut: i64) -> bool {
        (cut as i128) * self.den < self.num
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}
