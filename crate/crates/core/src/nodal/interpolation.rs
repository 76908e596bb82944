use super::coordinate;
use crate::algebra::RF;
use crate::error::{Error, Result};

/// Interpolation data on `P^1` with `p` at infinity: simple points
/// `kappa_j`, pairs `(kappa_{j,1}, kappa_{j,2})` that must share a value, and
/// the finite part `sum m_j p_j` of the divisor.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationProblem {
    pub kappa: Vec<RF>,
    pub pairs: Vec<[RF; 2]>,
    pub poles: Vec<(RF, i64)>,
}

impl InterpolationProblem {
    /// All interpolation nodes: the `kappa_j`, then the pairs in order.
    pub fn nodes(&self) -> Vec<RF> {
        self.kappa
            .iter()
            .cloned()
            .chain(self.pairs.iter().flat_map(|p| p.iter().cloned()))
            .collect()
    }

    fn check(&self) -> Result<()> {
        let nodes = self.nodes();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if nodes[i] == nodes[j] {
                    return Err(Error::Coincident(format!(
                        "interpolation nodes {} and {} agree",
                        i + 1,
                        j + 1
                    )));
                }
            }
            if self.poles.iter().any(|(p, _)| *p == nodes[i]) {
                return Err(Error::Coincident(format!(
                    "interpolation node {} lies on the divisor",
                    nodes[i]
                )));
            }
        }
        Ok(())
    }

    /// `K(x) = prod (x - node)` in the coordinate of component 0.
    pub fn k_poly(&self) -> RF {
        let x = RF::var(coordinate(0));
        self.nodes()
            .iter()
            .fold(RF::one(), |acc, k| &acc * &(&x - k))
    }

    /// `K'(node)`, the product of the differences to the other nodes.
    pub fn k_prime(&self, node: &RF) -> RF {
        self.nodes()
            .iter()
            .filter(|k| *k != node)
            .fold(RF::one(), |acc, k| &acc * &(node - k))
    }

    /// `P(x) = prod (x - p_j)^(m_j)`.
    pub fn p_poly(&self) -> RF {
        let x = RF::var(coordinate(0));
        self.poles.iter().fold(RF::one(), |acc, (p, m)| {
            &acc * &(&x - p).pow(*m as i32).expect("p is not a node")
        })
    }

    /// `P(c)`.
    pub fn p_at(&self, c: &RF) -> Result<RF> {
        self.poles
            .iter()
            .try_fold(RF::one(), |acc, (p, m)| Ok(&acc * &(c - p).pow(*m as i32)?))
    }

    /// `K(x) / P(x) * P(c) / (K'(c) (x - c))`, which is `1` at `c` and `0`
    /// at the other nodes.
    fn lagrange(&self, c: &RF) -> Result<RF> {
        let x = RF::var(coordinate(0));
        let w = self.p_at(c)?.checked_div(&self.k_prime(c))?;
        let kp = self.k_poly().checked_div(&self.p_poly())?;
        Ok(&(&kp * &w) * &(&x - c).recip()?)
    }
}

/// Functions `f = particular + sum mu_j mu_terms[j] + sum h_k h_terms[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationFamily {
    pub particular: RF,
    pub mu_terms: Vec<RF>,
    pub h_terms: Vec<RF>,
}

impl InterpolationFamily {
    pub fn member(&self, mu: &[RF], h: &[RF]) -> RF {
        let mut f = self.particular.clone();
        for (c, t) in mu
            .iter()
            .zip(&self.mu_terms)
            .chain(h.iter().zip(&self.h_terms))
        {
            f = &f + &(c * t);
        }
        f
    }
}

/// All `f` in `H^0(P^1, D_0 + infinity p)` with `f(kappa_j) = lambda_j` and
/// `f` constant on each pair, with the polynomial part `H` of degree at most
/// `h_degree`.
pub fn interpolation_basis(
    problem: &InterpolationProblem,
    lambda: &[RF],
    h_degree: usize,
) -> Result<InterpolationFamily> {
    problem.check()?;
    if lambda.len() != problem.kappa.len() {
        return Err(Error::input(format!(
            "{} values for {} points",
            lambda.len(),
            problem.kappa.len()
        )));
    }
    let mut particular = RF::zero();
    for (l, k) in lambda.iter().zip(&problem.kappa) {
        if !l.is_zero() {
            particular = &particular + &(l * &problem.lagrange(k)?);
        }
    }
    let mu_terms = problem
        .pairs
        .iter()
        .map(|[a, b]| Ok(&problem.lagrange(a)? + &problem.lagrange(b)?))
        .collect::<Result<Vec<_>>>()?;
    let x = RF::var(coordinate(0));
    let kp = problem.k_poly().checked_div(&problem.p_poly())?;
    let h_terms = (0..=h_degree)
        .map(|k| &kp * &x.pow(k as i32).expect("nonnegative power"))
        .collect();
    Ok(InterpolationFamily {
        particular,
        mu_terms,
        h_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rf;

    fn rf(s: &str) -> RF {
        parse_rf(s).unwrap()
    }

    #[test]
    fn trivial_problem() {
        let p = InterpolationProblem {
            kappa: vec![rf("3")],
            pairs: vec![],
            poles: vec![],
        };
        let fam = interpolation_basis(&p, &[RF::zero()], 0).unwrap();
        assert!(fam.particular.is_zero());
        assert_eq!(fam.h_terms, vec![rf("x0 - 3")]);
    }

    #[test]
    fn coincident_nodes() {
        let p = InterpolationProblem {
            kappa: vec![rf("1")],
            pairs: vec![[rf("2"), rf("1")]],
            poles: vec![],
        };
        assert!(interpolation_basis(&p, &[RF::one()], 0).is_err());
    }
}
