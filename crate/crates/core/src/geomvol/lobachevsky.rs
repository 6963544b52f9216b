use std::f64::consts::PI;

/// Zeta at even arguments; closed forms for 2 and 4, Euler-Maclaurin beyond.
fn zeta_even(k: usize) -> f64 {
    match k {
        1 => PI * PI / 6.0,
        2 => PI.powi(4) / 90.0,
        _ => {
            let s = 2 * k as i32;
            let n = 64;
            let head: f64 = (1..n).map(|i| (i as f64).powi(-s)).sum();
            let nf = n as f64;
            head + nf.powi(1 - s) / (s as f64 - 1.0) + 0.5 * nf.powi(-s) + s as f64 / 12.0 * nf.powi(-s - 1)
        }
    }
}

/// Clausen function Cl₂ on [-π, π] from its expansion about 0.
fn clausen(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ax = x.abs();
    let r = (x / (2.0 * PI)).powi(2);
    let mut sum = x - x * ax.ln();
    let mut pow = x;
    for k in 1..60 {
        pow *= r;
        // |B₂ₖ|/(2k)! = 2ζ(2k)/(2π)^{2k}
        let term = 2.0 * zeta_even(k) * pow / (2.0 * k as f64 * (2.0 * k as f64 + 1.0));
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

/// Л(θ) = −∫₀^θ ln|2 sin t| dt.
pub fn lobachevsky(theta: f64) -> f64 {
    // π-periodic: reduce to (−π/2, π/2], then Л(θ) = Cl₂(2θ)/2.
    let t = theta - PI * (theta / PI).round();
    0.5 * clausen(2.0 * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// −∫₀^θ ln(2 sin t) dt by Gauss-Legendre after removing the log singularity.
    fn quadrature(theta: f64) -> f64 {
        let nodes = [
            (-0.9739065285171717, 0.0666713443086881),
            (-0.8650633666889845, 0.1494513491505806),
            (-0.6794095682990244, 0.2190863625159820),
            (-0.4333953941292472, 0.2692667193099963),
            (-0.1488743389816312, 0.2955242247147529),
            (0.1488743389816312, 0.2955242247147529),
            (0.4333953941292472, 0.2692667193099963),
            (0.6794095682990244, 0.2190863625159820),
            (0.8650633666889845, 0.1494513491505806),
            (0.9739065285171717, 0.0666713443086881),
        ];
        let panels = 200;
        let h = theta / panels as f64;
        let mut smooth = 0.0;
        for p in 0..panels {
            let a = p as f64 * h;
            for (x, w) in nodes {
                let t = a + 0.5 * h * (x + 1.0);
                smooth += 0.5 * h * w * (2.0 * t.sin() / t).ln();
            }
        }
        // ∫₀^θ ln t dt = θ ln θ − θ
        -(smooth + theta * theta.ln() - theta)
    }

    #[test]
    fn special_values() {
        assert_eq!(lobachevsky(0.0), 0.0);
        assert!(lobachevsky(PI / 2.0).abs() < 1e-14);
        assert!((lobachevsky(PI / 6.0) - 0.507_470_803_204_827).abs() < 1e-12);
    }

    #[test]
    fn matches_quadrature() {
        for i in 1..40 {
            let t = i as f64 * PI / 40.0;
            assert!((lobachevsky(t) - quadrature(t)).abs() < 1e-12, "{t}");
        }
    }

    #[test]
    fn identities_on_grid() {
        for i in 0..1000 {
            let t = -4.0 + 8.0 * i as f64 / 999.0;
            assert!((lobachevsky(t) + lobachevsky(-t)).abs() < 1e-12);
            assert!((lobachevsky(t + PI) - lobachevsky(t)).abs() < 1e-12);
            let dup = lobachevsky(2.0 * t) - 2.0 * lobachevsky(t) - 2.0 * lobachevsky(t + PI / 2.0);
            assert!(dup.abs() < 1e-10, "{t}: {dup}");
        }
    }
}
