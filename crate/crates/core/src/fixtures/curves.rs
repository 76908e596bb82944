use crate::algebra::RF;
use crate::curves::{degeneration_family, CurveDivisor, HyperellipticCurve};

/// `y^2 = prod_{i <= g+1} (x - i)(x - i - eps)`, of genus `g`.
pub fn degeneration_curve(genus: usize) -> HyperellipticCurve {
    let kappa: Vec<RF> = (1..=genus as i64 + 1).map(RF::int).collect();
    degeneration_family(&kappa).expect("distinct kappa")
}

/// The genus 2 family over `Q(eps)` with `kappa = (1, 2, 3)`.
pub fn f2() -> HyperellipticCurve {
    degeneration_curve(2)
}

/// `y^2 = x^6 + 2x + 1`, which has the rational points `(0, 1)` and `(1, 2)`.
pub fn pointed_genus2() -> HyperellipticCurve {
    let f = [1, 2, 0, 0, 0, 0, 1].into_iter().map(RF::int).collect();
    HyperellipticCurve::new(f).expect("squarefree")
}

/// `D1 = p1` on [`pointed_genus2`] with `p1 = (1, 2)`.
pub fn pointed_d1() -> CurveDivisor {
    CurveDivisor::D1([RF::int(1), RF::int(2)])
}

/// `D2 = p1 + p2 - p` on [`pointed_genus2`].
pub fn pointed_d2() -> CurveDivisor {
    CurveDivisor::D2([RF::int(1), RF::int(2)], [RF::int(0), RF::int(1)])
}
