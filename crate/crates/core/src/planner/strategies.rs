use super::moves::{rectangle_between, Move};
use super::plan::CobordismPlan;
use crate::error::{domain, Error, Result};
use crate::torus::TorusLink;

/// `T(ab,c) → T(a,bc)` by one swap of cost `(b-1)|c-a|`.
pub fn prop1_plan(a: u64, b: u64, c: u64) -> Result<CobordismPlan> {
    if a == 0 || b == 0 || c == 0 {
        return Err(domain("swap parameters must be positive"));
    }
    let from = TorusLink::new(a * b, c)?;
    let to = TorusLink::new(a, b * c)?;
    Ok(CobordismPlan::new(from, to, vec![Move::prop1_swap(from, to, &[])?]))
}

/// Inductive cut-and-glue cobordism from `T(a,b)` to `T(c,d)`.
///
/// When one standard diagram contains the other as a rectangle of crossings
/// the plan is a single smoothing of cost `|Δχ|`. Otherwise, with
/// `a ≤ d` and `b > c`, `T(a,c)` is split off both sides (costs `a` and
/// `c`) and the remainders `T(a,b-c)`, `T(c,d-a)` are joined recursively
/// while the split-off copy rides along as a spectator. The total exceeds
/// `|Δχ|` by at most `2(a+b+c+d)`.
pub fn theorem2_upper(a: u64, b: u64, c: u64, d: u64) -> Result<CobordismPlan> {
    let from = TorusLink::new(a, b)?;
    let to = TorusLink::new(c, d)?;
    let mut moves = Vec::new();
    let mut spectators = Vec::new();
    cut_and_glue(from, to, &mut spectators, &mut moves)?;
    Ok(CobordismPlan::new(from, to, moves))
}

fn cut_and_glue(
    from: TorusLink,
    to: TorusLink,
    spectators: &mut Vec<TorusLink>,
    out: &mut Vec<Move>,
) -> Result<()> {
    if from == to {
        return Ok(());
    }
    if rectangle_between(&from, &to).is_some() {
        out.push(Move::rectangle(from, to, spectators)?);
        return Ok(());
    }
    // No rectangle embedding forces p1 < q2 and q1 > p2, so (a,b,c,d) =
    // (p1,q1,p2,q2) is in the splitting configuration.
    let (a, b) = from.params();
    let (c, d) = to.params();
    debug_assert!(a < d && b > c);
    let shared = TorusLink::new(a, c)?;
    let rest_from = TorusLink::new(a, b - c)?;
    let rest_to = TorusLink::new(c, d - a)?;
    out.push(Move::split(from, [shared, rest_from], spectators)?);
    spectators.push(shared);
    cut_and_glue(rest_from, rest_to, spectators, out)?;
    spectators.pop();
    out.push(Move::merge([shared, rest_to], to, spectators)?);
    Ok(())
}

/// `T(c,d) → T(c,ka) → T(kc,a) → T(b,a)` with `d = ka + r`, `0 ≤ r < a`:
/// a column trim of cost `r(c-1)`, a swap of cost `(k-1)(c-a)`, and a
/// rectangle of `(a-1)|kc-b|` crossings. Equal braid indices collapse to a
/// single rectangle.
pub fn theorem1_plan(a: u64, b: u64, c: u64, d: u64) -> Result<CobordismPlan> {
    if !(2 <= a && a <= c && a <= b && c <= d) {
        return Err(Error::Precondition(format!(
            "construction needs 2 <= a <= c, a <= b, c <= d; got ({a},{b},{c},{d})"
        )));
    }
    let start = TorusLink::new(c, d)?;
    let end = TorusLink::new(a, b)?;
    if a == c {
        return Ok(CobordismPlan::new(start, end, vec![Move::rectangle(start, end, &[])?]));
    }
    let (k, r) = (d / a, d % a);
    let trimmed = TorusLink::new(c, k * a)?;
    let swapped = TorusLink::new(k * c, a)?;
    let moves = vec![
        Move::rectangle(start, trimmed, &[])?,
        Move::prop1_swap(trimmed, swapped, &[])?,
        Move::rectangle(swapped, end, &[])?,
    ];
    debug_assert_eq!(moves[0].cost, r * (c - 1));
    Ok(CobordismPlan::new(start, end, moves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::validate_plan;
    use crate::torus::chi;

    fn t(p: u64, q: u64) -> TorusLink {
        TorusLink::new(p, q).unwrap()
    }

    #[test]
    fn prop1_examples() {
        let plan = prop1_plan(4, 2, 5).unwrap();
        assert_eq!((plan.start, plan.end, plan.total_cost), (t(5, 8), t(4, 10), 1));
        assert_eq!(prop1_plan(6, 1, 9).unwrap().total_cost, 0);
        assert_eq!(prop1_plan(3, 2, 7).unwrap().total_cost, 4);
        for n in 1..20 {
            let plan = prop1_plan(n, 2, n + 1).unwrap();
            assert_eq!((plan.start, plan.end, plan.total_cost), (t(2 * n, n + 1), t(n, 2 * n + 2), 1));
        }
    }

    #[test]
    fn theorem2_examples() {
        assert_eq!(theorem2_upper(2, 3, 2, 3).unwrap().total_cost, 0);
        assert_eq!(theorem2_upper(3, 4, 7, 5).unwrap().total_cost, 18);
        assert_eq!(theorem2_upper(2, 3, 2, 5).unwrap().total_cost, 2);
    }

    #[test]
    fn theorem2_uses_splits_when_needed() {
        // T(2,9) and T(3,4): no rectangle embedding either way.
        let plan = theorem2_upper(2, 9, 3, 4).unwrap();
        assert!(validate_plan(&plan).is_valid(), "{:?}", validate_plan(&plan));
        assert_eq!(plan.moves.first().unwrap().kind, crate::planner::MoveKind::Split);
        let gap = chi(&t(2, 9)).abs_diff(chi(&t(3, 4)));
        assert!(plan.total_cost >= gap && plan.total_cost <= gap + 2 * (2 + 9 + 3 + 4));
    }

    #[test]
    fn theorem2_bound_small_range() {
        for a in 1..=12 {
            for b in 1..=12 {
                for c in 1..=12 {
                    for d in 1..=12 {
                        let plan = theorem2_upper(a, b, c, d).unwrap();
                        let v = validate_plan(&plan);
                        assert!(v.is_valid(), "({a},{b},{c},{d}): {:?}", v.problems);
                        let f = plan.total_cost - plan.delta_chi();
                        assert!(f <= 2 * (a + b + c + d));
                        if (a <= d && b < c) || (a == c && b <= d) {
                            assert_eq!(f, 0, "rectangle case ({a},{b},{c},{d})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theorem1_examples() {
        let plan = theorem1_plan(3, 100, 5, 27).unwrap();
        let costs: Vec<u64> = plan.moves.iter().map(|m| m.cost).collect();
        assert_eq!(costs, vec![0, 16, 110]);
        assert_eq!(plan.total_cost, 126);
        assert!(validate_plan(&plan).is_valid());

        let plan = theorem1_plan(4, 11, 5, 8).unwrap();
        assert_eq!((plan.start, plan.end, plan.total_cost), (t(5, 8), t(4, 11), 4));

        for (a, b) in [(3, 7), (4, 4), (5, 13)] {
            assert_eq!(theorem1_plan(a, b, a, b).unwrap().total_cost, 0);
        }
        assert!(matches!(theorem1_plan(1, 3, 2, 5), Err(Error::Precondition(_))));
        assert!(matches!(theorem1_plan(4, 3, 5, 8), Err(Error::Precondition(_))));
    }

    #[test]
    fn theorem1_plans_valid() {
        for a in 2..=8 {
            for c in a..=10 {
                for b in a..=30 {
                    for d in c..=30 {
                        let plan = theorem1_plan(a, b, c, d).unwrap();
                        assert!(validate_plan(&plan).is_valid(), "({a},{b},{c},{d})");
                    }
                }
            }
        }
    }
}
