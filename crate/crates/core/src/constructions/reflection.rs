//! Reflection bundles, split by the parity of the base cycle.

use super::catalog::{closed_pairs, reversed};
use super::{reflection_kind_name, require, Builder, ConstructionResult, Provenance, BLUE, GREEN, PURPLE, RED, YELLOW};
use crate::bundle::{BundleSpec, ReflectionKind};
use crate::decomp::reflection_residual_cycles;
use crate::error::Result;

const S_ODD: &str = "reflection-s-odd";
const S_EVEN: &str = "reflection-s-even";

/// Odd `s`: 4 pages without fixed points, 5 otherwise.
///
/// Spine `A_1⁻ A_2 A_3⁻ … A_s⁻`; rungs alternate yellow/green by row and
/// the seam is purple.
pub fn embed_reflection_s_odd(s: usize, t: usize, kind: ReflectionKind) -> Result<ConstructionResult> {
    let spec = BundleSpec::reflection(s, t, kind)?;
    require(s % 2 == 1, S_ODD, &spec, "s odd")?;
    let mut b = Builder::new(spec, Provenance { construction: S_ODD, case: reflection_kind_name(kind), relaxed: false });
    let cat = b.cat.clone();
    let ti = t as i64;

    for i in 1..=s {
        b.append(if i % 2 == 1 { reversed(cat.a(i)) } else { cat.a(i) });
    }
    for i in 1..s {
        let page = if i % 2 == 1 { YELLOW } else { GREEN };
        for j in 1..=ti {
            b.fix(cat.v(i, j), cat.v(i + 1, j), page)?;
        }
    }
    if kind == ReflectionKind::TwoFixed {
        for i in 2..=ti {
            b.fix(cat.v(1, i), cat.v(s, ti + 2 - i), PURPLE)?;
        }
        b.fix(cat.v(1, 1), cat.v(s, 1), BLUE)?;
    } else {
        for i in 1..=ti {
            b.fix(cat.v(s, i), cat.v(1, ti + 1 - i), PURPLE)?;
        }
    }
    let palette: &[usize] = if t % 2 == 0 { &[YELLOW, GREEN, PURPLE, RED] } else { &[YELLOW, GREEN, PURPLE, RED, BLUE] };
    for i in 1..=s {
        b.allow(closed_pairs(&cat.a(i)), palette)?;
    }
    b.finish(if kind == ReflectionKind::NoFixed { 4 } else { 5 })
}

/// Even `s`: 4 pages with two fixed points, 5 otherwise.
pub fn embed_reflection_s_even(s: usize, t: usize, kind: ReflectionKind) -> Result<ConstructionResult> {
    let spec = BundleSpec::reflection(s, t, kind)?;
    require(s % 2 == 0, S_EVEN, &spec, "s even")?;
    match kind {
        ReflectionKind::TwoFixed => two_fixed(spec),
        ReflectionKind::OneFixed => one_fixed(spec),
        ReflectionKind::NoFixed => no_fixed(spec),
    }
}

/// Edges of the residual cycle through 1-based column `j`.
fn residual_through(spec: &BundleSpec, kind: ReflectionKind, j: usize) -> Vec<(usize, usize)> {
    let d = reflection_residual_cycles(spec.s(), spec.t(), kind).expect("validated reflection");
    let cycle = d
        .cycles
        .iter()
        .find(|c| c.iter().any(|v| v.q == j - 1))
        .expect("every column lies on a residual cycle");
    let flat: Vec<usize> = cycle.iter().map(|v| v.flat(spec.t())).collect();
    closed_pairs(&flat)
}

/// Spine `B_1 B_2⁻ B_3 B_4⁻ … B_t⁻`; fibers yellow/green by column parity,
/// residual cycles blue/red.
fn two_fixed(spec: BundleSpec) -> Result<ConstructionResult> {
    let (s, t) = (spec.s(), spec.t());
    let mut b = Builder::new(spec, Provenance { construction: S_EVEN, case: "two-fixed-points", relaxed: false });
    let cat = b.cat.clone();
    for j in 1..=t {
        b.append(if j % 2 == 1 { cat.b(j) } else { reversed(cat.b(j)) });
    }
    for i in 1..=s {
        for j in 1..=t as i64 {
            b.fix(cat.v(i, j), cat.v(i, j + 1), if j % 2 == 1 { YELLOW } else { GREEN })?;
        }
    }
    b.allow(spec.cross_edges(), &[BLUE, RED])?;
    b.finish(4)
}

/// Spine `U⁻ B_2⁻ B_3 B_4⁻ … B_{t−1}⁻`, where `U` zigzags over columns 1
/// and `t`.
fn one_fixed(spec: BundleSpec) -> Result<ConstructionResult> {
    let (s, t) = (spec.s(), spec.t());
    let ti = t as i64;
    let mut b = Builder::new(spec, Provenance { construction: S_EVEN, case: "one-fixed-point", relaxed: false });
    if t == 3 {
        // the listed red and purple pairs overlap at t = 3
        b.relax_on_failure();
    }
    let cat = b.cat.clone();

    let mut u = Vec::with_capacity(2 * s);
    for i in (2..=s).rev() {
        let (first, second) = if i % 2 == 0 { (1, ti) } else { (ti, 1) };
        u.extend([cat.v(i, first), cat.v(i, second)]);
    }
    u.extend([cat.v(1, 1), cat.v(1, ti)]);
    b.append(reversed(u));
    for j in 2..t {
        b.append(if j % 2 == 0 { reversed(cat.b(j)) } else { cat.b(j) });
    }

    // fibers
    for i in 1..=s {
        for j in 1..ti {
            let (x, y) = (cat.v(i, j), cat.v(i, j + 1));
            if (i, j) == (2, 1) {
                b.fix(x, y, RED)?;
            } else if (i, j) == (1, ti - 1) {
                b.fix(x, y, BLUE)?;
            } else {
                b.fix(x, y, if j % 2 == 1 { YELLOW } else { GREEN })?;
            }
        }
        let closing = match i {
            1 => GREEN,
            2 => YELLOW,
            _ => RED,
        };
        b.fix(cat.v(i, 1), cat.v(i, ti), closing)?;
    }

    // residual cycles
    for i in 1..=2usize.min((t - 1) / 2) {
        let ii = i as i64;
        b.fix(cat.v(1, ti + 1 - ii), cat.v(2, ti + 1 - ii), RED)?;
        b.fix(cat.v(1, ti + 1 - ii), cat.v(s, ii), PURPLE)?;
    }
    for j in 1..=(t + 1) / 2 {
        b.allow(residual_through(&spec, ReflectionKind::OneFixed, j), &[BLUE, PURPLE])?;
    }
    b.finish(5)
}

/// Spine `M_1 M_2⁻ … M_{t/2}^± N_{t/2}^± … N_2 N_1⁻`, where `M_j` holds the
/// first and last rows of columns `j` and `t+1−j`, and `N_j` the middle rows.
fn no_fixed(spec: BundleSpec) -> Result<ConstructionResult> {
    let (s, t) = (spec.s(), spec.t());
    let (ti, half) = (t as i64, t / 2);
    let hi = half as i64;
    let mut b = Builder::new(spec, Provenance { construction: S_EVEN, case: "no-fixed-point", relaxed: false });
    let cat = b.cat.clone();

    let ends = |j: usize| vec![cat.v(1, j as i64), cat.v(s, j as i64)];
    let middle = |j: usize| (2..s).map(|i| cat.v(i, j as i64)).collect::<Vec<_>>();
    for k in 1..=half {
        let mut m = ends(k);
        m.extend(ends(t + 1 - k));
        b.append(if k % 2 == 0 { reversed(m) } else { m });
    }
    for k in (1..=half).rev() {
        let mut n = middle(k);
        n.extend(reversed(middle(t + 1 - k)));
        b.append(if k % 2 == 1 { reversed(n) } else { n });
    }

    // fibers
    for i in 1..=s {
        for j in 1..=ti {
            let page = if (i == 1 || i == s) && (j == hi || j == ti) {
                if i == 1 {
                    BLUE
                } else {
                    RED
                }
            } else if j % 2 == 0 {
                GREEN
            } else {
                YELLOW
            };
            b.fix(cat.v(i, j), cat.v(i, j + 1), page)?;
        }
    }

    // rungs and seam
    for i in [1, hi] {
        b.fix(cat.v(s - 1, i), cat.v(s, i), PURPLE)?;
        b.fix(cat.v(1, i), cat.v(2, i), RED)?;
    }
    for j in [hi + 1, ti] {
        b.fix(cat.v(1, j), cat.v(2, j), PURPLE)?;
        b.fix(cat.v(s - 1, j), cat.v(s, j), BLUE)?;
    }
    let seam_from = |b: &mut Builder, j: i64, page: usize| -> Result<()> {
        for i in [1, s] {
            b.fix(cat.v(i, j), cat.v(s + 1 - i, ti + 1 - j), page)?;
        }
        Ok(())
    };
    seam_from(&mut b, 1, GREEN)?;
    for j in 2..hi {
        seam_from(&mut b, j, RED)?;
    }
    seam_from(&mut b, hi, if half % 2 == 1 { YELLOW } else { GREEN })?;
    for j in 1..=t {
        let col = cat.b(j);
        b.allow(col.windows(2).map(|w| (w[0], w[1])), &[RED, PURPLE, BLUE])?;
    }
    b.finish(5)
}
