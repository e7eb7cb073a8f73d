//! Shift bundles with `gcd(t, d) > 1`.

use num_integer::Integer;

use super::catalog::{closed_pairs, reversed};
use super::{require, Builder, ConstructionResult, Provenance, BLUE, GREEN, PURPLE, RED, YELLOW};
use crate::bundle::BundleSpec;
use crate::error::Result;

const EVEN_GCD: &str = "shift-even-gcd";
const ODD_GCD: &str = "shift-odd-gcd";

/// `gcd(t, d)` even: 4 pages for even `s`, 5 for odd `s`.
///
/// Spine `V_1 V_2⁻ V_3 V_4⁻ … V_g⁻` over the residual cycles.
pub fn embed_shift_even_gcd(s: usize, t: usize, d: usize) -> Result<ConstructionResult> {
    let spec = BundleSpec::shift(s, t, d)?;
    let g = t.gcd(&d);
    require(d >= 1 && d <= t / 2 && g % 2 == 0, EVEN_GCD, &spec, "1 <= d <= t/2 and gcd(t,d) even")?;
    let case = if s % 2 == 0 { "s-even" } else { "s-odd" };
    let mut b = Builder::new(spec, Provenance { construction: EVEN_GCD, case, relaxed: false });
    let cat = b.cat.clone();
    let di = d as i64;

    for m in 1..=g {
        let seq = cat.residual(m).to_vec();
        b.append(if m % 2 == 0 { reversed(seq) } else { seq });
    }

    // fiber edges, attributed to their first endpoint's residual cycle
    for m in 1..g {
        let page = if m % 2 == 1 { YELLOW } else { PURPLE };
        for &v in cat.residual(m) {
            let (x, y) = cat.fiber_next(v);
            b.fix(x, y, page)?;
        }
    }
    let last = cat.residual(g);
    let split = last.iter().position(|&v| v == cat.v(1, t as i64)).expect("(1,t) lies on V_g");
    for (k, &v) in last.iter().enumerate() {
        let (x, y) = cat.fiber_next(v);
        b.fix(x, y, if k < split { PURPLE } else { GREEN })?;
    }

    for i in 1..=g as i64 {
        b.fix(cat.v(1, i), cat.v(s, i - di), RED)?;
    }
    let palette: &[usize] = if s % 2 == 0 { &[RED, GREEN, PURPLE] } else { &[RED, GREEN, BLUE] };
    for k in 1..=g {
        b.allow(cat.residual_edges(k), palette)?;
    }
    b.finish(if s % 2 == 0 { 4 } else { 5 })
}

/// `gcd(t, d)` odd and at least 3: 4 pages when `t` is even and `s`, `d`
/// are odd (the bipartite case), otherwise 5.
pub fn embed_shift_odd_gcd(s: usize, t: usize, d: usize) -> Result<ConstructionResult> {
    let spec = BundleSpec::shift(s, t, d)?;
    let g = t.gcd(&d);
    require(d >= 1 && d <= t / 2 && g % 2 == 1 && g != 1, ODD_GCD, &spec, "1 <= d <= t/2, gcd(t,d) odd and > 1")?;
    if t % 2 == 0 && s % 2 == 1 && d % 2 == 1 {
        odd_gcd_bipartite(spec)
    } else {
        odd_gcd_nonbipartite(spec)
    }
}

/// Spine `B_1 B_t⁻ B_3 B_{t−2}⁻ … B_{t−1} B_2⁻`.
fn odd_gcd_bipartite(spec: BundleSpec) -> Result<ConstructionResult> {
    let (s, t) = (spec.s(), spec.t());
    let crate::bundle::Automorphism::Shift(d) = spec.phi() else { unreachable!() };
    let mut b = Builder::new(spec, Provenance { construction: ODD_GCD, case: "bipartite", relaxed: false });
    let cat = b.cat.clone();
    let (ti, di) = (t as i64, d as i64);

    for k in 1..=t / 2 {
        b.append(cat.b(2 * k - 1));
        b.append(reversed(cat.b(t - 2 * k + 2)));
    }
    for i in 1..=s {
        for j in 1..=ti {
            let page = if j % 2 == 0 { YELLOW } else { GREEN };
            b.fix(cat.v(i, j), cat.v(i, j + 1), page)?;
        }
    }
    for i in 1..=ti {
        let page = if i % 2 == 1 { RED } else { PURPLE };
        b.fix(cat.v(1, i), cat.v(s, i - di), page)?;
    }
    for k in 1..=cat.residual_count() {
        b.allow(cat.residual_edges(k), &[RED, PURPLE])?;
    }
    b.finish(4)
}

/// Spine `X V_3⁻ V_4 V_5⁻ … V_g⁻`, with `X` interleaving `V_1` and `V_2`.
fn odd_gcd_nonbipartite(spec: BundleSpec) -> Result<ConstructionResult> {
    let (s, t) = (spec.s(), spec.t());
    let crate::bundle::Automorphism::Shift(d) = spec.phi() else { unreachable!() };
    let g = t.gcd(&d);
    let len = s * t / g;
    let h1_even = len % 2 == 0;
    let case = if h1_even { "nonbipartite/even-residual" } else { "nonbipartite/odd-residual" };
    let mut b = Builder::new(spec, Provenance { construction: ODD_GCD, case, relaxed: false });
    if g == 3 || d != g {
        // g = 3 empties the odd-index sets and makes (s,g−d) = (s,3−d);
        // d ≠ g reorders V_1, V_2 against the listed fiber sets
        b.relax_on_failure();
    }
    let cat = b.cat.clone();
    let (ti, di, gi) = (t as i64, d as i64, g as i64);
    let (v1, v2) = (cat.residual(1).to_vec(), cat.residual(2).to_vec());

    // X: quadruples V1_j V2_j V2_{j+1} V1_{j+1}, odd length ends V1_last V2_last
    let mut x = Vec::with_capacity(2 * len);
    for k in 0..len / 2 {
        x.extend([v1[2 * k], v2[2 * k], v2[2 * k + 1], v1[2 * k + 1]]);
    }
    if !h1_even {
        x.extend([v1[len - 1], v2[len - 1]]);
    }
    b.append(x);
    for m in 3..=g {
        let seq = cat.residual(m).to_vec();
        b.append(if m % 2 == 1 { reversed(seq) } else { seq });
    }

    // fiber edges
    let fiber_of = |m: usize| -> Vec<(usize, usize, usize)> {
        cat.residual(m)
            .iter()
            .map(|&v| {
                let (x, y) = cat.fiber_next(v);
                (x, y, cat.pair(v).1)
            })
            .collect()
    };
    for m in (2..g).step_by(2) {
        for (x, y, _) in fiber_of(m) {
            if !h1_even && x == cat.v(s, 2 - di) {
                continue;
            }
            b.fix(x, y, GREEN)?;
        }
    }
    for m in (3..g - 1).step_by(2) {
        for (x, y, _) in fiber_of(m) {
            b.fix(x, y, YELLOW)?;
        }
    }
    for (x, y, j) in fiber_of(g) {
        if j != t {
            b.fix(x, y, YELLOW)?;
        } else if h1_even {
            b.fix(x, y, PURPLE)?;
        }
    }
    if h1_even {
        for (x, y, j) in fiber_of(1) {
            b.fix(x, y, if j == 1 { YELLOW } else { PURPLE })?;
        }
    } else {
        for i in 3..=s {
            b.fix(cat.v(i, 1), cat.v(i, 2), YELLOW)?;
        }
        b.fix(cat.v(s, 1 - di), cat.v(s, 2 - di), GREEN)?;
        b.fix(cat.v(s, 2 - di), cat.v(s, 3 - di), BLUE)?;
        b.fix(cat.v(2, 1), cat.v(2, 2), BLUE)?;
        for i in 2..=s {
            b.fix(cat.v(i, ti), cat.v(i, 1), PURPLE)?;
        }
        b.fix(cat.v(1, 1), cat.v(1, 2), PURPLE)?;
        let skip = [cat.v(s - 1, 1 - di), cat.v(s, 1 - di)];
        for (x, y, j) in fiber_of(1) {
            if j != 1 && !skip.contains(&x) {
                b.fix(x, y, PURPLE)?;
            }
        }
        b.fix(cat.v(1, 1), cat.v(1, ti), RED)?;
        b.fix(cat.v(s - 1, 1 - di), cat.v(s - 1, 2 - di), RED)?;
    }

    // residual cycles H_1, H_2
    if h1_even {
        b.fix(cat.v(1, 1), cat.v(2, 1), RED)?;
        b.fix(cat.v(1, 2), cat.v(2, 2), RED)?;
    } else {
        b.fix(cat.v(1, 1), cat.v(2, 1), YELLOW)?;
        b.fix(cat.v(1, 2), cat.v(2, 2), YELLOW)?;
        b.fix(cat.v(s - 1, 2 - di), cat.v(s, 2 - di), PURPLE)?;
        b.fix(cat.v(s - 1, 1 - di), cat.v(s, 1 - di), PURPLE)?;
        b.fix(cat.v(1, 1), cat.v(s, 1 - di), BLUE)?;
        b.fix(cat.v(1, 2), cat.v(s, 2 - di), RED)?;
        b.fix(cat.v(2, 1), cat.v(3, 1), RED)?;
        b.fix(cat.v(2, 2), cat.v(3, 2), RED)?;
    }
    b.allow(cat.residual_edges(1), &[RED, BLUE])?;
    b.allow(cat.residual_edges(2), &[RED, BLUE])?;
    for k in 3..g {
        b.allow(cat.residual_edges(k), &[RED, PURPLE, BLUE])?;
    }

    // H_g: seam edge into (1,g), column t path, then the rest
    b.fix(cat.v(1, gi), cat.v(s, gi - di), BLUE)?;
    let column_t: Vec<usize> = cat.b(t);
    b.allow(column_t.windows(2).map(|w| (w[0], w[1])), &[YELLOW, RED])?;
    b.allow_rest(closed_pairs(cat.residual(g)), &[PURPLE, RED])?;
    b.finish(5)
}
