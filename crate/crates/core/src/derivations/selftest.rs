use crate::error::Result;
use crate::exactpoly::{Indet, Poly};
use crate::lcsa::{Algebra, Parity};
use crate::report::CheckReport;

use super::ansatz::Ansatz;
use super::predicates::triple_terms;

/// Verifies that the (A,B,C,D) residual `R` with symbolic weights obeys
///
/// * `R(∂a, b, c) = -λ R(a, b, c)`
/// * `R(a, ∂b, c) = -μ R(a, b, c)`
/// * `R(a, b, ∂c) = (∂+λ+μ+x) R(a, b, c)`
///
/// for every unit map of the degree-`bound` ansatz of both parities and every
/// generator triple. Since `R` is linear in the map, this covers all maps in
/// the window, and it is what makes generator triples sufficient for every
/// triple identity.
pub fn sufficiency_self_test(alg: &Algebra, bound: u16) -> Result<CheckReport> {
    let mut report = CheckReport::new("generator sufficiency");
    let w = [Indet::COEFF_A, Indet::COEFF_B, Indet::COEFF_C, Indet::COEFF_D].map(Poly::var);
    let (d, l, m, x) = (
        Poly::var(Indet::D),
        Poly::var(Indet::LAMBDA),
        Poly::var(Indet::MU),
        Poly::var(Indet::X),
    );
    let factors = [-&l, -&m, &(&(&d + &l) + &m) + &x];
    let rank = alg.rank();
    for parity in Parity::both() {
        let ansatz = Ansatz::new(alg.sig(), parity, bound);
        for u in 0..ansatz.len() {
            let phi = ansatz.unit(u);
            for i in 0..rank {
                for j in 0..rank {
                    for k in 0..rank {
                        let g = [alg.generator(i), alg.generator(j), alg.generator(k)];
                        let base = triple_terms(alg, &phi, &g[0], &g[1], &g[2])?.weighted(&w);
                        for (slot, factor) in factors.iter().enumerate() {
                            let mut args = g.clone();
                            args[slot] = args[slot].d();
                            let moved = triple_terms(alg, &phi, &args[0], &args[1], &args[2])?.weighted(&w);
                            let label = format!("{} (unit map {u})", ["slot-a", "slot-b", "slot-c"][slot]);
                            report.record(&label, &[i, j, k], &moved - &base.mul_poly(factor));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
