use kpg_core::algebra::{parse_rf, Scalar, RF};
use kpg_core::curves::{
    curve_plucker, degeneration_family, eps, h_polynomial, limit_frame, limit_soliton,
    specialize_projective, CurveDivisor, HyperellipticCurve,
};
use kpg_core::sato::{hirota_apply, plucker_vector, schur_sigma, Partition, TrivariatePoly};
use serde_json::json;

use super::sato::{coefficient_map, soliton_lines};
use crate::args::CurveCmd;
use crate::error::{CliError, Result};
use crate::input::{load, rf_list, CurveJson};
use crate::report::{join, rf_list as rf_list_json, Header, Report};

fn divisor_name(d: &CurveDivisor) -> String {
    match d {
        CurveDivisor::D0 => "D0".into(),
        CurveDivisor::D1([c, y]) => format!("D1 at ({c}, {y})"),
        CurveDivisor::D2([c1, y1], [c2, y2]) => format!("D2 at ({c1}, {y1}), ({c2}, {y2})"),
    }
}

fn projectively_equal(a: &[RF], b: &[RF]) -> bool {
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(|x| x.is_zero());
    };
    !b[i].is_zero() && a.iter().zip(b).all(|(x, y)| (x * &b[i]) == (y * &a[i]))
}

pub fn run(cmd: &CurveCmd) -> Result<Report> {
    match cmd {
        CurveCmd::Tau {
            curve,
            order,
            eps: eps_value,
            eps_symbolic: _,
            hirota,
        } => {
            let (c, file) = load::<CurveJson>(curve)?;
            let mut f = c.coefficients()?;
            let mut header = Header::new("curve tau");
            header.inputs.push(file);
            header.order("n", order);
            if let Some(v) = eps_value {
                let v = parse_rf(v)?;
                if !v.is_constant() {
                    return Err(CliError::usage("--eps takes a rational number"));
                }
                header.order("eps", &v);
                f = f
                    .iter()
                    .map(|x| x.substitute_var(eps(), &v))
                    .collect::<kpg_core::Result<_>>()?;
            }
            let curve = HyperellipticCurve::new(f)?;
            c.check_genus(&curve)?;
            let d = c.divisor()?;
            header.track(curve.coefficients());
            header.times();
            let coeffs = curve_plucker(&curve, &d, *order)?;
            let sigmas: Vec<_> = coeffs.iter().map(|(l, _)| schur_sigma(l)).collect();
            let tau =
                TrivariatePoly::linear_combination(coeffs.iter().map(|(_, c)| c).zip(&sigmas));
            let mut r = Report::new(header);
            r.line(format!("genus: {}", curve.genus()));
            r.line(format!("divisor: {}", divisor_name(&d)));
            let (text, obj) = coefficient_map(coeffs.iter().map(|(l, c)| (l, c)));
            r.line(format!("sigma coefficients: {text}"));
            r.set("genus", curve.genus());
            r.set("divisor", divisor_name(&d));
            r.set("sigma_coefficients", obj);
            if let Some(lead) = coeffs.iter().map(|(_, c)| c).find(|c| !c.is_zero()) {
                let scaled: Vec<(Partition, RF)> = coeffs
                    .iter()
                    .map(|(l, c)| Ok((l.clone(), c.checked_div(lead)?)))
                    .collect::<kpg_core::Result<_>>()?;
                let (text, obj) = coefficient_map(scaled.iter().map(|(l, c)| (l, c)));
                r.line(format!("sigma coefficients, scaled: {text}"));
                r.set("sigma_coefficients_scaled", obj);
            }
            r.line(format!("tau[{order}] = {tau}"));
            r.set("tau", tau.to_string());
            if *hirota {
                let h = hirota_apply(&tau);
                let low = h.low_weighted_degree();
                let mono = h.lowest_monomial();
                match (low, mono) {
                    (Some(dg), Some((a, b, c))) => {
                        r.line(format!("hirota lowest degree: {dg}"));
                        r.line(format!("hirota lowest monomial: x^{a} y^{b} t^{c}"));
                        r.set(
                            "hirota",
                            json!({"lowest_degree": dg, "lowest_monomial": [a, b, c]}),
                        );
                    }
                    _ => {
                        r.line("hirota form vanishes");
                        r.set("hirota", json!({"vanishes": true}));
                    }
                }
            }
            Ok(r)
        }
        CurveCmd::Degenerate { kappa, order } => {
            let kappa = rf_list(kappa)?;
            let family = degeneration_family(&kappa)?;
            let mut header = Header::new("curve degenerate");
            header.track(family.coefficients());
            if let Some(n) = order {
                header.order("n", n);
            }
            let mut r = Report::new(header);
            r.line(format!("genus: {}", family.genus()));
            r.line(format!("f: [{}]", join(family.coefficients())));
            let h = h_polynomial(&kappa);
            r.line(format!("h(z) = {h}"));
            r.set("genus", family.genus());
            r.set("f", rf_list_json(family.coefficients()));
            r.set("h", h.to_string());
            let s = limit_soliton(&kappa)?;
            soliton_lines(&mut r, &s);
            if let Some(n) = order {
                let generic = curve_plucker(&family, &CurveDivisor::D0, *n)?;
                let vals: Vec<RF> = generic.iter().map(|(_, c)| c.clone()).collect();
                let limit = specialize_projective(&vals, eps(), &Scalar::from_integer(0.into()))?;
                let target = plucker_vector(&limit_frame(&kappa, 2 * n + 4)?, *n)?;
                let tv: Vec<RF> = target.iter().map(|(_, c)| c.clone()).collect();
                let ok = projectively_equal(&limit, &tv);
                r.line(format!(
                    "eps -> 0 limit agrees with the limit frame through weight {n}: {ok}"
                ));
                r.set("limit_agrees", ok);
            }
            Ok(r)
        }
    }
}
