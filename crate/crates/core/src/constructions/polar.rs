use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::One;

use crate::geometry::{Point, Rational};

const DENOM_BITS: u32 = 24;

fn dyadic(x: f64) -> Rational {
    let scale = (1u64 << DENOM_BITS) as f64;
    Rational::new(BigInt::from((x * scale).round() as i64), BigInt::from(1u64 << DENOM_BITS))
}

fn wrap(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    } else if t <= -PI {
        t += 2.0 * PI;
    }
    t
}

/// A point exactly on the circle of radius `rho`, at (approximately) angle `theta`.
pub fn polar(theta: f64, rho: &Rational) -> Point {
    let t = wrap(theta);
    let (phi, flip) = if t.abs() > PI / 2.0 { (wrap(t - PI), true) } else { (t, false) };
    let s = dyadic((phi / 2.0).tan());
    let one = Rational::one();
    let s2 = &s * &s;
    let den = &one + &s2;
    let x = (&one - &s2) / &den * rho;
    let y = (Rational::from_integer(2.into()) * &s) / &den * rho;
    if flip {
        Point::new(-x, -y)
    } else {
        Point::new(x, y)
    }
}

/// Points strictly between angles `from` and `to` on the circle of radius `rho`,
/// spaced by at most `step`. Handles either direction.
pub fn arc_interior(from: f64, to: f64, rho: &Rational, step: f64) -> Vec<Point> {
    let span = to - from;
    let k = (span.abs() / step).ceil().max(1.0) as usize;
    (1..k).map(|i| polar(from + span * i as f64 / k as f64, rho)).collect()
}

/// Rational approximation with a dyadic denominator.
pub fn approx(x: f64) -> Rational {
    dyadic(x)
}
