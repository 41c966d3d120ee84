//! Numerical integration and differentiation helpers.
//!
//! Adaptive Gauss-Kronrod (G7/K15) bisection on finite intervals, a mapped
//! variant for semi-infinite ranges, and Richardson-extrapolated central
//! differences used by the gradient-equivalence and stability checks.

use crate::error::{Error, Result};

// G7/K15 nodes and weights (positive half; the rule is symmetric).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Integral value with an error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

/// One K15 panel: returns (kronrod, |kronrod - gauss|).
fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// Stops when the summed panel error is below `max(tol_abs, tol_rel |I|)`;
/// reports [`Error::QuadratureTolerance`] if the panel budget is exhausted
/// first.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol_abs: f64, tol_rel: f64) -> Result<Quadrature> {
    const MAX_PANELS: usize = 4000;
    let (v, e) = kronrod15(&f, a, b);
    let mut panels = vec![Panel { a, b, value: v, error: e }];
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        let target = tol_abs.max(tol_rel * total.abs());
        if err <= target {
            return Ok(Quadrature { value: total, error: err });
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::QuadratureTolerance {
                achieved: err,
                requested: target,
            });
        }
        // split the worst panel
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("non-empty panel list");
        let Panel { a, b, .. } = panels.swap_remove(idx);
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            // interval at floating-point resolution; keep its contribution
            let (v, e) = kronrod15(&f, a, b);
            panels.push(Panel { a, b, value: v, error: e });
            let total: f64 = panels.iter().map(|p| p.value).sum();
            let err: f64 = panels.iter().map(|p| p.error).sum();
            return Ok(Quadrature { value: total, error: err });
        }
        let (v1, e1) = kronrod15(&f, a, m);
        let (v2, e2) = kronrod15(&f, m, b);
        panels.push(Panel { a, b: m, value: v1, error: e1 });
        panels.push(Panel { a: m, b, value: v2, error: e2 });
    }
}

/// Integral of `f` over `[a, inf)` via the rational map `x = a + t/(1-t)`.
///
/// The integrand must decay fast enough for the mapped integrand to stay
/// bounded (faster than `1/x^2`).
pub fn integrate_to_inf<F: Fn(f64) -> f64>(f: F, a: f64, tol_abs: f64, tol_rel: f64) -> Result<Quadrature> {
    let g = move |t: f64| {
        let om = 1.0 - t;
        let x = a + t / om;
        let jac = 1.0 / (om * om);
        let v = f(x) * jac;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, 0.0, 1.0, tol_abs, tol_rel)
}

/// Central difference with one Richardson level, step `h0 = 1e-5 max(1,|x|)`.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    let h = 1e-5 * x.abs().max(1.0);
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}

/// Plain second central difference with step `h`.
pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// Mixed second partial of `f(x, y)` by the four-point cross stencil.
pub fn mixed_derivative<F: Fn(f64, f64) -> f64>(f: F, x: f64, y: f64, hx: f64, hy: f64) -> f64 {
    (f(x + hx, y + hy) - f(x + hx, y - hy) - f(x - hx, y + hy) + f(x - hx, y - hy))
        / (4.0 * hx * hy)
}
