use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::torus::{chi, TorusLink};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// Smooth (or add) a rectangle of crossings in the standard diagram.
    RectangleSmoothing,
    /// `T(a+b,c) → T(a,c) ⊔ T(b,c)`, or the reverse merge.
    Split,
    /// `T(ab,c) ↔ T(a,bc)`.
    Prop1Swap,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::RectangleSmoothing => "rectangle",
            MoveKind::Split => "split",
            MoveKind::Prop1Swap => "swap",
        })
    }
}

/// A formal disjoint union of torus links, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkState(Vec<TorusLink>);

impl LinkState {
    pub fn new(mut links: Vec<TorusLink>) -> Self {
        links.sort_unstable();
        LinkState(links)
    }

    pub fn single(link: TorusLink) -> Self {
        LinkState(vec![link])
    }

    pub fn links(&self) -> &[TorusLink] {
        &self.0
    }

    pub fn as_single(&self) -> Option<TorusLink> {
        match self.0.as_slice() {
            [one] => Some(*one),
            _ => None,
        }
    }

    pub fn chi(&self) -> i64 {
        self.0.iter().map(chi).sum()
    }

    pub fn with(&self, extra: &[TorusLink]) -> Self {
        let mut links = self.0.clone();
        links.extend_from_slice(extra);
        LinkState::new(links)
    }

    /// `(self \ other, other \ self)` as multisets.
    pub fn difference(&self, other: &LinkState) -> (Vec<TorusLink>, Vec<TorusLink>) {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x == y => {
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    only_a.push(*x);
                    i += 1;
                }
                (Some(_), Some(y)) => {
                    only_b.push(*y);
                    j += 1;
                }
                (Some(x), None) => {
                    only_a.push(*x);
                    i += 1;
                }
                (None, Some(y)) => {
                    only_b.push(*y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        (only_a, only_b)
    }

    pub fn params(&self) -> Vec<(u64, u64)> {
        self.0.iter().map(TorusLink::params).collect()
    }
}

impl fmt::Display for LinkState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊔ ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// One elementary cobordism acting on part of a link state. Components
/// present in both `source` and `target` are spectators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub source: LinkState,
    pub target: LinkState,
    pub cost: u64,
}

impl Move {
    pub fn rectangle(from: TorusLink, to: TorusLink, spectators: &[TorusLink]) -> Result<Move> {
        Move::checked(MoveKind::RectangleSmoothing, vec![from], vec![to], spectators, rectangle_between(&from, &to))
    }

    pub fn prop1_swap(from: TorusLink, to: TorusLink, spectators: &[TorusLink]) -> Result<Move> {
        let cost = prop1_costs(&from, &to).into_iter().min();
        Move::checked(MoveKind::Prop1Swap, vec![from], vec![to], spectators, cost)
    }

    pub fn split(whole: TorusLink, parts: [TorusLink; 2], spectators: &[TorusLink]) -> Result<Move> {
        let cost = split_costs(&whole, &parts).into_iter().min();
        Move::checked(MoveKind::Split, vec![whole], parts.to_vec(), spectators, cost)
    }

    pub fn merge(parts: [TorusLink; 2], whole: TorusLink, spectators: &[TorusLink]) -> Result<Move> {
        let cost = split_costs(&whole, &parts).into_iter().min();
        Move::checked(MoveKind::Split, parts.to_vec(), vec![whole], spectators, cost)
    }

    fn checked(
        kind: MoveKind,
        from: Vec<TorusLink>,
        to: Vec<TorusLink>,
        spectators: &[TorusLink],
        cost: Option<u64>,
    ) -> Result<Move> {
        let cost = cost.ok_or_else(|| {
            domain(format!("no {kind} move takes {} to {}", LinkState::new(from.clone()), LinkState::new(to.clone())))
        })?;
        let mv = Move {
            kind,
            source: LinkState::new(from).with(spectators),
            target: LinkState::new(to).with(spectators),
            cost,
        };
        mv.check().map_err(domain)?;
        Ok(mv)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    pub fn reversed(&self) -> Move {
        Move { kind: self.kind, source: self.target.clone(), target: self.source.clone(), cost: self.cost }
    }

    /// Re-derives the move's shape and cost from its endpoints.
    pub fn check(&self) -> std::result::Result<(), String> {
        let (gone, new) = self.source.difference(&self.target);
        let expected: Vec<u64> = match (self.kind, gone.as_slice(), new.as_slice()) {
            (MoveKind::RectangleSmoothing | MoveKind::Prop1Swap, [], []) => vec![0],
            (MoveKind::RectangleSmoothing, [a], [b]) => rectangle_between(a, b).into_iter().collect(),
            (MoveKind::Prop1Swap, [a], [b]) => prop1_costs(a, b),
            (MoveKind::Split, [whole], [x, y]) | (MoveKind::Split, [x, y], [whole]) => {
                split_costs(whole, &[*x, *y])
            }
            _ => Vec::new(),
        };
        if expected.is_empty() {
            return Err(format!("{} does not take {} to {}", self.kind, self.source, self.target));
        }
        if !expected.contains(&self.cost) {
            return Err(format!(
                "{} {} → {} has cost {}, expected one of {:?}",
                self.kind, self.source, self.target, self.cost, expected
            ));
        }
        Ok(())
    }
}

/// Whether the standard diagram of `small` sits inside that of `large` as a
/// sub-rectangle of crossings: some orientation `small = T(a,b)`,
/// `large = T(c,d)` has `a ≤ d, b < c`, or `a = c, b ≤ d`.
pub fn rectangle_embeds(small: &TorusLink, large: &TorusLink) -> bool {
    small.orientations().any(|(a, b)| {
        large.orientations().any(|(c, d)| (a <= d && b < c) || (a == c && b <= d))
    })
}

/// Cost of a rectangle move between two links, if either embeds in the other.
pub fn rectangle_between(x: &TorusLink, y: &TorusLink) -> Option<u64> {
    (rectangle_embeds(x, y) || rectangle_embeds(y, x)).then(|| chi(x).abs_diff(chi(y)))
}

/// Number of crossings smoothed to pass from `T(c,d)` to `T(a,b)`:
/// `(c-1)(d-a) + (a-1)(c-b) = -ab + cd + a + b - c - d`.
pub fn rectangle_cost(a: u64, b: u64, c: u64, d: u64) -> Result<u64> {
    if [a, b, c, d].contains(&0) {
        return Err(domain("rectangle parameters must be positive"));
    }
    if !((a <= d && b < c) || (a == c && b <= d)) {
        return Err(domain(format!(
            "T({a},{b}) does not embed in T({c},{d}): need a <= d and b < c"
        )));
    }
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    Ok((-a * b + c * d + a + b - c - d) as u64)
}

/// Splits `T(first, second)` along its first parameter:
/// `T(a + b, c) → T(a, c) ⊔ T(b, c)` at cost `c`.
pub fn split_move(first: u64, second: u64, a: u64) -> Result<(TorusLink, TorusLink, u64)> {
    if a == 0 || a >= first {
        return Err(domain(format!("cannot split {a} strands off T({first},{second})")));
    }
    Ok((TorusLink::new(a, second)?, TorusLink::new(first - a, second)?, second))
}

/// Costs `c` of every way to read `whole = T(a+b,c)`, `parts = {T(a,c), T(b,c)}`.
fn split_costs(whole: &TorusLink, parts: &[TorusLink; 2]) -> Vec<u64> {
    let mut out = Vec::new();
    for (x, z) in whole.orientations() {
        for (x1, z1) in parts[0].orientations() {
            for (x2, z2) in parts[1].orientations() {
                if z1 == z && z2 == z && x1 + x2 == x && !out.contains(&z) {
                    out.push(z);
                }
            }
        }
    }
    out
}

/// Costs `(b-1)|c-a|` of every reading `{x, y} = {T(ab,c), T(a,bc)}`.
fn prop1_costs(x: &TorusLink, y: &TorusLink) -> Vec<u64> {
    let mut out = Vec::new();
    for (from, to) in [(x, y), (y, x)] {
        for (ab, c) in from.orientations() {
            for (a, bc) in to.orientations() {
                if ab % a == 0 {
                    let b = ab / a;
                    if b * c == bc {
                        let cost = (b - 1) * c.abs_diff(a);
                        if !out.contains(&cost) {
                            out.push(cost);
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u64, q: u64) -> TorusLink {
        TorusLink::new(p, q).unwrap()
    }

    #[test]
    fn rectangle_cost_examples() {
        assert_eq!(rectangle_cost(3, 4, 7, 5).unwrap(), 18);
        assert_eq!(rectangle_cost(5, 3, 5, 3).unwrap(), 0);
        for d in 3..40 {
            assert_eq!(rectangle_cost(3, 4, 7, d).unwrap(), 6 * d - 12);
        }
        assert!(rectangle_cost(8, 4, 7, 5).is_err());
        assert!(rectangle_cost(3, 7, 7, 5).is_err());
    }

    #[test]
    fn rectangle_cost_is_chi_gap() {
        for a in 1..12 {
            for b in 1..12 {
                for c in 1..12 {
                    for d in 1..12 {
                        if let Ok(cost) = rectangle_cost(a, b, c, d) {
                            let gap = chi(&t(a, b)) - chi(&t(c, d));
                            assert_eq!(cost as i64, gap);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_move(7, 6, 3).unwrap(), (t(3, 6), t(4, 6), 6));
        assert_eq!(split_move(2, 9, 1).unwrap(), (t(1, 9), t(1, 9), 9));
        assert_eq!(split_move(5, 3, 2).unwrap(), (t(2, 3), t(3, 3), 3));
        assert!(split_move(5, 3, 5).is_err());
        assert!(split_move(5, 3, 0).is_err());
    }

    #[test]
    fn split_cost_is_chi_gap() {
        for x in 2..10 {
            for c in 1..10 {
                for a in 1..x {
                    let (l, r, cost) = split_move(x, c, a).unwrap();
                    let gap = chi(&l) + chi(&r) - chi(&t(x, c));
                    assert_eq!(cost as i64, gap);
                }
            }
        }
    }

    #[test]
    fn move_checks() {
        let swap = Move::prop1_swap(t(5, 8), t(4, 10), &[]).unwrap();
        assert_eq!(swap.cost, 1);
        assert!(swap.check().is_ok());
        assert!(swap.reversed().check().is_ok());

        let mut bad = swap.clone();
        bad.cost = 0;
        assert!(bad.check().is_err());

        assert!(Move::prop1_swap(t(5, 8), t(4, 11), &[]).is_err());
        assert!(Move::rectangle(t(4, 10), t(4, 11), &[t(2, 2)]).is_ok());

        let split = Move::split(t(6, 7), [t(3, 6), t(4, 6)], &[t(2, 3)]).unwrap();
        assert_eq!(split.cost, 6);
        assert_eq!(split.source.links().len(), 2);
        let merge = Move::merge([t(3, 6), t(4, 6)], t(6, 7), &[]).unwrap();
        assert!(merge.check().is_ok());
        assert!(Move::split(t(6, 7), [t(3, 6), t(3, 6)], &[]).is_err());
    }

    #[test]
    fn state_difference() {
        let a = LinkState::new(vec![t(2, 3), t(2, 3), t(4, 5)]);
        let b = LinkState::new(vec![t(2, 3), t(3, 4)]);
        let (x, y) = a.difference(&b);
        assert_eq!(x, vec![t(2, 3), t(4, 5)]);
        assert_eq!(y, vec![t(3, 4)]);
    }
}
