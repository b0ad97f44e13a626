//! Seeded generators of random but well-formed inputs.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{BraidWord, Letter};
use crate::curves::{
    j_writhe_max, linking_bound, writhe_bound, Covered, CurveComponent, CurveData, PairTable,
};
use crate::cz::mu_zero;
use crate::model::{End, OrbitClass, OrbitKind, OrbitSet, RelClass, Side, Trivialization};
use crate::relindex::{NiceEnd, NiceRepData};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Elliptic angles with denominators large enough for every multiplicity
/// produced below, or hyperbolic orbits with `|n| <= 6`.
pub fn random_kind(rng: &mut impl Rng) -> OrbitKind {
    if rng.gen_bool(0.5) {
        let q = *[29i64, 31, 37, 41, 43].choose(rng).unwrap();
        loop {
            let p = rng.gen_range(-2 * q..2 * q);
            if p.gcd(&q) == 1 {
                return OrbitKind::elliptic(p, q, (q - 1) as u32).unwrap();
            }
        }
    }
    let n = rng.gen_range(-6i64..=6);
    if n % 2 == 0 {
        OrbitKind::PositiveHyperbolic(n)
    } else {
        OrbitKind::NegativeHyperbolic(n)
    }
}

pub fn random_pool(rng: &mut impl Rng, size: usize) -> Vec<OrbitClass> {
    (0..size)
        .map(|i| OrbitClass::new(format!("g{i}"), random_kind(rng)))
        .collect()
}

pub fn random_orbit_set(
    rng: &mut impl Rng,
    side: Side,
    pool: &[OrbitClass],
    max_mult: u32,
) -> OrbitSet {
    let mut entries = Vec::new();
    for o in pool {
        if rng.gen_bool(0.6) {
            entries.push((o.clone(), rng.gen_range(1..=max_mult)));
        }
    }
    OrbitSet::new(side, entries).unwrap()
}

pub fn random_trivialization<'a>(
    rng: &mut impl Rng,
    orbits: impl IntoIterator<Item = &'a OrbitClass>,
) -> Trivialization {
    let mut t = Trivialization::default();
    for o in orbits {
        t.set(o.id.clone(), rng.gen_range(-3..=3));
    }
    t
}

pub fn random_relclass(rng: &mut impl Rng) -> RelClass {
    let size = rng.gen_range(1..=3);
    let pool = random_pool(rng, size);
    let alpha = random_orbit_set(rng, Side::Plus, &pool, 5);
    let beta = random_orbit_set(rng, Side::Minus, &pool, 5);
    RelClass::new(
        alpha,
        beta,
        rng.gen_range(-10..=10),
        rng.gen_range(-10..=10),
    )
    .unwrap()
}

pub fn random_orbit_set_pair(rng: &mut impl Rng) -> (OrbitSet, OrbitSet) {
    let size = rng.gen_range(1..=4);
    let pool = random_pool(rng, size);
    (
        random_orbit_set(rng, Side::Plus, &pool, 5),
        random_orbit_set(rng, Side::Plus, &pool, 5),
    )
}

/// Random word on `m <= m_max` strands whose axis is brought back to slot 0
/// at the end; components are random unions of the cycles of the closure.
pub fn random_braid(rng: &mut impl Rng, m_max: usize, len_max: usize) -> BraidWord {
    let m = rng.gen_range(1..=m_max);
    let len = rng.gen_range(0..=len_max);
    let mut letters: Vec<Letter> = (0..len)
        .map(|_| Letter {
            pos: rng.gen_range(0..m),
            sign: if rng.gen_bool(0.5) { 1 } else { -1 },
        })
        .collect();
    let mut slots: Vec<usize> = (0..=m).collect();
    for l in &letters {
        slots.swap(l.pos, l.pos + 1);
    }
    let mut axis = slots.iter().position(|s| *s == 0).unwrap();
    while axis > 0 {
        letters.push(Letter {
            pos: axis - 1,
            sign: if rng.gen_bool(0.5) { 1 } else { -1 },
        });
        slots.swap(axis - 1, axis);
        axis -= 1;
    }
    // the strand ending in slot s continues as strand s
    let mut cycles: Vec<BTreeSet<usize>> = Vec::new();
    let mut seen = BTreeSet::new();
    for start in 1..=m {
        let mut cycle = BTreeSet::new();
        let mut s = start;
        while seen.insert(s) {
            cycle.insert(s);
            s = slots[s];
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    let groups = rng.gen_range(1..=cycles.len());
    let mut comps: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for (i, c) in cycles.into_iter().enumerate() {
        let g = if i < groups {
            i
        } else {
            rng.gen_range(0..groups)
        };
        comps.entry(format!("c{g}")).or_default().extend(c);
    }
    BraidWord::new(m, letters, comps).unwrap()
}

fn random_ends(rng: &mut impl Rng, pool: &[OrbitClass], count: usize, max_mult: u32) -> Vec<End> {
    let mut ends: Vec<End> = (0..count)
        .map(|_| End {
            side: if rng.gen_bool(0.5) {
                Side::Plus
            } else {
                Side::Minus
            },
            orbit: pool.choose(rng).unwrap().clone(),
            mult: rng.gen_range(1..=max_mult),
        })
        .collect();
    ends[0].side = Side::Plus;
    ends
}

/// Writhe bound of the braid at one side of one orbit, in the form of a
/// bound on positive ends: negative ends are read on the mirrored orbit.
fn effective_kind(side: Side, kind: &OrbitKind) -> OrbitKind {
    match side {
        Side::Plus => kind.clone(),
        Side::Minus => kind.mirrored(),
    }
}

/// Simple component with random ends, an asymptotic writhe near the writhe
/// bound on either side of it, and `c` from the adjunction formula.
/// Returns the component and `Q(C)`, all in the reference trivialization.
pub fn random_adjunction_component(rng: &mut impl Rng) -> (CurveComponent, i64) {
    let size = rng.gen_range(1..=2);
    let pool = random_pool(rng, size);
    let count = rng.gen_range(1..=4);
    let mut c = CurveComponent {
        id: "C".into(),
        genus: rng.gen_range(0..=2),
        delta: rng.gen_range(0..=2),
        ends: random_ends(rng, &pool, count, 4),
        c_ref: 0,
        w_ref: 0,
    };
    let tau = Trivialization::reference(c.orbits());
    let mut bound = -mu_zero(&c.ends, &tau).unwrap();
    for ((side, _), (o, qs)) in c.groups() {
        let m: u32 = qs.iter().sum();
        bound += side.sign() * crate::cz::cz_sum(&o.kind, 0, m).unwrap();
    }
    c.w_ref = bound + rng.gen_range(-3..=3);
    let q_self = rng.gen_range(-6..=6);
    c.c_ref = c.chi() + q_self + c.w_ref - 2 * i64::from(c.delta);
    (c, q_self)
}

/// Nicely embedded representative data consistent with `c_ref`, together
/// with the orbit sets it connects.
pub fn random_nice_rep(rng: &mut impl Rng) -> (OrbitSet, OrbitSet, NiceRepData, i64) {
    let size = rng.gen_range(1..=3);
    let pool = random_pool(rng, size);
    let mut ends = Vec::new();
    let end = |orbit: &OrbitClass, side, mult, reduced, offset, rng: &mut dyn rand::RngCore| {
        let (writhe, winding) = if reduced > 0 {
            (rng.gen_range(-4..=4), rng.gen_range(-4..=4))
        } else {
            (0, 0)
        };
        NiceEnd {
            orbit: orbit.id.clone(),
            side,
            mult,
            reduced,
            writhe,
            winding,
            conormal_shift: 0,
            offset,
        }
    };
    for o in &pool {
        let offset = rng.gen_range(-3..=3);
        match rng.gen_range(0..3) {
            0 => {
                let m = rng.gen_range(1..=4);
                ends.push(end(o, Side::Plus, m, m, offset, rng));
            }
            1 => {
                let m = rng.gen_range(1..=4);
                ends.push(end(o, Side::Minus, m, m, offset, rng));
            }
            _ => {
                let common = rng.gen_range(1..=2);
                let extra = rng.gen_range(0..=2);
                let (rp, rm) = if rng.gen_bool(0.5) {
                    (extra, 0)
                } else {
                    (0, extra)
                };
                ends.push(end(o, Side::Plus, common + rp, rp, offset, rng));
                ends.push(end(o, Side::Minus, common + rm, rm, offset, rng));
            }
        }
    }
    let set = |side: Side| {
        let entries = ends
            .iter()
            .filter(|e| e.side == side)
            .map(|e| {
                (
                    pool.iter().find(|o| o.id == e.orbit).unwrap().clone(),
                    e.mult,
                )
            })
            .collect();
        OrbitSet::new(side, entries).unwrap()
    };
    let (a, b) = (set(Side::Plus), set(Side::Minus));
    let c_ref = rng.gen_range(-6..=6);
    let data = NiceRepData {
        ends,
        conormal_c1: 0,
    }
    .with_consistent_conormal(c_ref);
    (a, b, data, c_ref)
}

/// Curve in a symplectization: covers of trivial cylinders and of simple
/// components with a positive end, asymptotic writhes and linking numbers
/// within their bounds, `C.C >= 0` for every non-cylinder component, and
/// `c`, `Q` from the adjunction formula and the intersection numbers.
pub fn random_symplectization_curve(rng: &mut impl Rng) -> CurveData {
    let size = rng.gen_range(1..=3);
    let pool = random_pool(rng, size);
    let count = rng.gen_range(1..=3);
    let mut comps: Vec<Covered> = Vec::new();
    let mut q = PairTable::default();
    for i in 0..count {
        let id = format!("C{i}");
        let degree = rng.gen_range(1..=2);
        if rng.gen_bool(0.25) {
            let o = pool.choose(rng).unwrap().clone();
            let component = CurveComponent {
                id: id.clone(),
                genus: 0,
                delta: 0,
                ends: vec![
                    End {
                        side: Side::Plus,
                        orbit: o.clone(),
                        mult: 1,
                    },
                    End {
                        side: Side::Minus,
                        orbit: o,
                        mult: 1,
                    },
                ],
                c_ref: 0,
                w_ref: 0,
            };
            q.insert(&id, &id, 0);
            comps.push(Covered { component, degree });
            continue;
        }
        let n = rng.gen_range(1..=2);
        let mut c = CurveComponent {
            id: id.clone(),
            genus: rng.gen_range(0..=1),
            delta: rng.gen_range(0..=1),
            ends: random_ends(rng, &pool, n, 2),
            c_ref: 0,
            w_ref: 0,
        };
        if c.is_trivial_cylinder() {
            c.genus = 1;
        }
        let mut w = 0;
        for ((side, _), (o, qs)) in c.groups() {
            let k = effective_kind(side, &o.kind);
            let b = writhe_bound(&k, 0, &qs)
                .unwrap()
                .min(j_writhe_max(&k, 0, &qs).unwrap());
            w += b - rng.gen_range(0..=2);
        }
        c.w_ref = w;
        let tau = Trivialization::reference(c.orbits());
        let h_plus = c
            .ends
            .iter()
            .filter(|e| matches!(e.orbit.kind, OrbitKind::PositiveHyperbolic(_)))
            .count() as i64;
        let g = i64::from(c.genus);
        let dl = i64::from(c.delta);
        let base = 2 * g - 2 + c.chi() + 2 * w - 4 * dl + mu_zero(&c.ends, &tau).unwrap() + h_plus;
        let q_self = Integer::div_ceil(&-base, &2) + rng.gen_range(0..=1);
        c.c_ref = c.chi() + q_self + w - 2 * dl;
        q.insert(&id, &id, q_self);
        comps.push(Covered {
            component: c,
            degree,
        });
    }
    let mut intersections = PairTable::default();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let (a, b) = (&comps[i].component, &comps[j].component);
            let gb = b.groups();
            let mut l = 0;
            for (key, (o, qa)) in a.groups() {
                if let Some((_, qb)) = gb.get(&key) {
                    let k = effective_kind(key.0, &o.kind);
                    l += linking_bound(&k, 0, &qa, qb).unwrap() - rng.gen_range(0..=1);
                }
            }
            let x = rng.gen_range(0..=2);
            intersections.insert(&a.id, &b.id, x);
            q.insert(&a.id, &b.id, x - l);
        }
    }
    CurveData {
        components: comps,
        q,
        intersections,
    }
}
