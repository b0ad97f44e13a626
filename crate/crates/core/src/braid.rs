//! Braids in a neighborhood of an orbit: words over `m` strands together
//! with the axis, and their writhe, linking and winding invariants.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One crossing: the strands in slots `pos` and `pos + 1` swap, with the
/// given sign. Slot 0 starts out holding the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(usize, i8)", into = "(usize, i8)")]
pub struct Letter {
    pub pos: usize,
    pub sign: i8,
}

impl From<(usize, i8)> for Letter {
    fn from((pos, sign): (usize, i8)) -> Self {
        Letter { pos, sign }
    }
}

impl From<Letter> for (usize, i8) {
    fn from(l: Letter) -> Self {
        (l.pos, l.sign)
    }
}

/// Braid word over strands `1..=m` plus the axis strand `0`, with a
/// partition of `1..=m` into named components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    pub m: usize,
    pub letters: Vec<Letter>,
    pub components: BTreeMap<String, BTreeSet<usize>>,
}

type Trace = (Vec<usize>, Vec<(usize, usize, i64)>);

/// Strand occupying each slot after every prefix of the word, together with
/// the pair of strands meeting at each crossing.
fn trace(m: usize, letters: &[Letter]) -> Result<Trace> {
    let mut slots: Vec<usize> = (0..=m).collect();
    let mut crossings = Vec::with_capacity(letters.len());
    for l in letters {
        if l.pos >= m {
            return Err(Error::MalformedWord(format!(
                "position {} out of range",
                l.pos
            )));
        }
        if l.sign != 1 && l.sign != -1 {
            return Err(Error::MalformedWord(format!("sign {} is not +-1", l.sign)));
        }
        crossings.push((slots[l.pos], slots[l.pos + 1], i64::from(l.sign)));
        slots.swap(l.pos, l.pos + 1);
    }
    Ok((slots, crossings))
}

impl BraidWord {
    pub fn new(
        m: usize,
        letters: Vec<Letter>,
        components: BTreeMap<String, BTreeSet<usize>>,
    ) -> Result<Self> {
        let b = BraidWord {
            m,
            letters,
            components,
        };
        b.validate()?;
        Ok(b)
    }

    /// Single-component braid containing every strand.
    pub fn connected(m: usize, letters: Vec<Letter>, name: &str) -> Result<Self> {
        let comps = [(name.to_string(), (1..=m).collect())]
            .into_iter()
            .collect();
        BraidWord::new(m, letters, comps)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (name, strands) in &self.components {
            if strands.is_empty() {
                return Err(Error::MalformedWord(format!("component '{name}' is empty")));
            }
            for s in strands {
                if *s == 0 || *s > self.m || !seen.insert(*s) {
                    return Err(Error::MalformedWord(format!(
                        "strand {s} is out of range or in two components"
                    )));
                }
            }
        }
        if seen.len() != self.m {
            return Err(Error::MalformedWord(
                "components do not cover every strand".into(),
            ));
        }
        let (slots, crossings) = trace(self.m, &self.letters)?;
        if slots[0] != 0 {
            return Err(Error::MalformedWord("axis does not close up".into()));
        }
        // Closing the braid sends the strand ending in slot s to the start of strand s.
        for (name, strands) in &self.components {
            for (slot, strand) in slots.iter().enumerate() {
                if strands.contains(strand) && !strands.contains(&slot) {
                    return Err(Error::MalformedWord(format!(
                        "closure does not preserve component '{name}'"
                    )));
                }
            }
        }
        let axis = crossings
            .iter()
            .filter(|(a, b, _)| *a == 0 || *b == 0)
            .count();
        if axis % 2 != 0 {
            return Err(Error::MalformedWord("odd number of axis crossings".into()));
        }
        Ok(())
    }

    fn owner(&self) -> Vec<Option<&str>> {
        let mut own = vec![None; self.m + 1];
        for (name, strands) in &self.components {
            for s in strands {
                own[*s] = Some(name.as_str());
            }
        }
        own
    }

    pub fn strand_counts(&self) -> BTreeMap<String, i64> {
        self.components
            .iter()
            .map(|(n, s)| (n.clone(), s.len() as i64))
            .collect()
    }

    /// Merges two components under a new name.
    pub fn merged(&self, a: &str, b: &str, name: &str) -> Result<BraidWord> {
        let mut comps = self.components.clone();
        let sa = comps
            .remove(a)
            .ok_or_else(|| Error::Invalid(format!("unknown component '{a}'")))?;
        let sb = comps
            .remove(b)
            .ok_or_else(|| Error::Invalid(format!("unknown component '{b}'")))?;
        comps.insert(name.to_string(), sa.union(&sb).copied().collect());
        BraidWord::new(self.m, self.letters.clone(), comps)
    }
}

/// Writhe per component, linking per pair of components, and winding
/// around the axis per component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidInvariants {
    pub writhe: BTreeMap<String, i64>,
    /// Symmetric: `linking[a][b] == linking[b][a]`, no diagonal entries.
    pub linking: BTreeMap<String, BTreeMap<String, i64>>,
    pub winding: BTreeMap<String, i64>,
}

impl BraidInvariants {
    pub fn link(&self, a: &str, b: &str) -> i64 {
        self.linking
            .get(a)
            .and_then(|r| r.get(b))
            .copied()
            .unwrap_or(0)
    }

    pub fn writhe_of(&self, c: &str) -> i64 {
        self.writhe.get(c).copied().unwrap_or(0)
    }

    pub fn winding_of(&self, c: &str) -> i64 {
        self.winding.get(c).copied().unwrap_or(0)
    }
}

pub fn invariants(b: &BraidWord) -> Result<BraidInvariants> {
    b.validate()?;
    let (_, crossings) = trace(b.m, &b.letters)?;
    let own = b.owner();
    let names: Vec<&String> = b.components.keys().collect();
    let mut writhe: BTreeMap<String, i64> = names.iter().map(|n| ((*n).clone(), 0)).collect();
    let mut winding = writhe.clone();
    let mut linking: BTreeMap<String, BTreeMap<String, i64>> = BTreeMap::new();
    for n in &names {
        let row = names
            .iter()
            .filter(|o| *o != n)
            .map(|o| ((*o).clone(), 0))
            .collect();
        linking.insert((*n).clone(), row);
    }
    for (s, t, sign) in crossings {
        match (own[s], own[t]) {
            (None, Some(c)) | (Some(c), None) => *winding.get_mut(c).unwrap() += sign,
            (Some(c), Some(d)) if c == d => *writhe.get_mut(c).unwrap() += sign,
            (Some(c), Some(d)) => {
                *linking.get_mut(c).unwrap().get_mut(d).unwrap() += sign;
                *linking.get_mut(d).unwrap().get_mut(c).unwrap() += sign;
            }
            (None, None) => unreachable!("axis cannot cross itself"),
        }
    }
    for v in winding.values_mut() {
        debug_assert!(*v % 2 == 0);
        *v /= 2;
    }
    for row in linking.values_mut() {
        for v in row.values_mut() {
            debug_assert!(*v % 2 == 0);
            *v /= 2;
        }
    }
    Ok(BraidInvariants {
        writhe,
        linking,
        winding,
    })
}

/// Invariants after shifting the trivialization by `delta`.
pub fn reframe(
    inv: &BraidInvariants,
    strand_counts: &BTreeMap<String, i64>,
    delta: i64,
) -> BraidInvariants {
    let m = |c: &str| strand_counts.get(c).copied().unwrap_or(0);
    BraidInvariants {
        writhe: inv
            .writhe
            .iter()
            .map(|(c, w)| (c.clone(), w - m(c) * (m(c) - 1) * delta))
            .collect(),
        linking: inv
            .linking
            .iter()
            .map(|(a, row)| {
                let row = row
                    .iter()
                    .map(|(b, l)| (b.clone(), l - m(a) * m(b) * delta))
                    .collect();
                (a.clone(), row)
            })
            .collect(),
        winding: inv
            .winding
            .iter()
            .map(|(c, e)| (c.clone(), e - m(c) * delta))
            .collect(),
    }
}

fn full_twist_letters(from: usize, to: usize, sign: i8) -> Vec<Letter> {
    let n = to - from + 1;
    let mut out = Vec::with_capacity(n * (n - 1));
    for _ in 0..n {
        for pos in from..to {
            out.push(Letter { pos, sign });
        }
    }
    out
}

/// Appends a full twist of strands `1..=m`, leaving the axis alone.
pub fn insert_full_twist(b: &BraidWord, positive: bool) -> BraidWord {
    let mut out = b.clone();
    if b.m >= 2 {
        out.letters
            .extend(full_twist_letters(1, b.m, if positive { 1 } else { -1 }));
    }
    out
}

/// Appends a full twist of all strands including the axis; this is the
/// braid seen after changing the trivialization by one unit.
pub fn insert_framing_twist(b: &BraidWord, positive: bool) -> BraidWord {
    let mut out = b.clone();
    if b.m >= 1 {
        out.letters
            .extend(full_twist_letters(0, b.m, if positive { 1 } else { -1 }));
    }
    out
}

pub fn union_writhe(inv: &BraidInvariants, c1: &str, c2: &str) -> i64 {
    inv.writhe_of(c1) + inv.writhe_of(c2) + 2 * inv.link(c1, c2)
}
