//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use decfit::cdf::{validate_series, Measure, ValueKind};
use decfit::model::eval_fermi_dirac;
use decfit::{DecileSeries, FermiParams, Point};

/// `(T, mu)` per year of the published mean disposable expenditure fits.
pub const TABLE5: [(&str, f64, f64); 13] = [
    ("2000/2001", 0.4999, 8.113),
    ("2001/2002", 0.4974, 8.139),
    ("2002/2003", 0.4952, 8.164),
    ("2003/2004", 0.4881, 8.196),
    ("2004/2005", 0.4866, 8.235),
    ("2005/2006", 0.4931, 8.241),
    ("2006", 0.4887, 8.285),
    ("2007", 0.4837, 8.287),
    ("2008", 0.4999, 8.309),
    ("2009", 0.4662, 8.273),
    ("2010", 0.4763, 8.316),
    ("2011", 0.4748, 8.343),
    ("2012", 0.4654, 8.347),
];

pub fn table5_params(t: f64, mu: f64) -> FermiParams {
    FermiParams::new(100.0, mu, t).unwrap()
}

/// `n` noiseless points at evenly spaced x over `[0, x_max]`.
pub fn noiseless(p: &FermiParams, n: usize, x_max: f64) -> Vec<Point> {
    (0..n)
        .map(|k| {
            let x = x_max * k as f64 / (n - 1) as f64;
            Point::new(x, eval_fermi_dirac(p, x))
        })
        .collect()
}

/// Mean-decile values whose cumulative set lies on the curve: x at
/// p = 90, ..., 10 from the inverse, and the last decile extrapolated
/// linearly from the previous two.
pub fn inverted_mean_series(label: &str, p: &FermiParams) -> DecileSeries {
    let mut xs: Vec<f64> = (1..=9)
        .map(|k| p.inverse(100.0 - 10.0 * k as f64).unwrap())
        .collect();
    xs.push(2.0 * xs[8] - xs[7]);
    validate_series(label, &xs, ValueKind::Mean, Measure::Disposable).unwrap()
}

/// Straight line through the points from the 2x2 normal equations.
pub fn normal_equations_line(points: &[Point]) -> (f64, f64) {
    let n = points.len() as f64;
    let (sx, sy, sxx, sxy) = points.iter().fold((0.0, 0.0, 0.0, 0.0), |(a, b, c, d), pt| {
        (a + pt.x, b + pt.p, c + pt.x * pt.x, d + pt.x * pt.p)
    });
    let det = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sxx * sy - sx * sxy) / det;
    (slope, intercept)
}

/// Fermi-Dirac value written from scratch. Below `mu` the curve is `g`
/// minus a small tail; returning that tail negated keeps differences of
/// nearly saturated values accurate. `below` fixes the branch.
fn oracle_value(g: f64, mu: f64, t: f64, x: f64, below: bool) -> f64 {
    let z = (x - mu) / t;
    if below {
        // -(g - f) = -g e^z / (1 + e^z)
        -g * z.exp() / (1.0 + z.exp())
    } else {
        g * (-z).exp() / (1.0 + (-z).exp())
    }
}

/// Central finite differences of the curve with respect to `(g, mu, T)`,
/// step `1e-6 * max(1, |param|)`.
pub fn fd_jacobian(p: &FermiParams, x: f64) -> [f64; 3] {
    let base = p.to_array();
    let below = x < p.mu();
    let mut out = [0.0; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let h = 1e-6 * base[i].abs().max(1.0);
        let mut hi = base;
        let mut lo = base;
        hi[i] += h;
        lo[i] -= h;
        let f = |v: [f64; 3]| {
            let tail = oracle_value(v[0], v[1], v[2], x, below);
            // d/dg of the full curve is s, and of the negated tail s - 1.
            if below && i == 0 {
                tail + v[0]
            } else {
                tail
            }
        };
        *slot = (f(hi) - f(lo)) / (hi[i] - lo[i]);
    }
    out
}

pub fn relative_error(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        (got - want).abs() / got.abs().max(want.abs())
    }
}
