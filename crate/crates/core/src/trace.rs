//! Re-checkable coincidence certificates.
//!
//! A [`ProofTrace`] is a list of steps, each claiming `from ≍ to` for the
//! reason named by its [`Rule`]. Verification replays the steps in order with
//! a union-find over the patterns seen so far: a step may rely on coincidences
//! established by earlier steps, never on later ones.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::coincidence::{gamma_patterns, is_isolating, is_vincular};
use crate::diagonals::{enc_key, enclosed_diagonals};
use crate::mesh::{Mesh, MeshPattern};
use crate::perm::Symmetry;
use crate::shading::{ShadeMove, ShadeShape};
use crate::unionfind::UnionFind;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// A single square added by a shading rule.
    Sl,
    /// A pair of squares added by a pair shading rule.
    Dsl,
    /// A simultaneous shading move.
    Ssl,
    /// A mesh sandwiched between two coincident meshes.
    Closure,
    /// The two direct-sum detecting patterns over `12`.
    Gamma,
    /// Transfer of an earlier coincidence through a symmetry.
    Symmetry,
    /// Vincular patterns with equal enclosed diagonals.
    Vincular,
    /// Isolating patterns with equal enclosed diagonals.
    Isolating,
    /// A pattern without enclosed diagonals is coincident with its
    /// classical pattern.
    Classical,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::Sl,
        Rule::Dsl,
        Rule::Ssl,
        Rule::Closure,
        Rule::Gamma,
        Rule::Symmetry,
        Rule::Vincular,
        Rule::Isolating,
        Rule::Classical,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Rule::Sl => "SL",
            Rule::Dsl => "DSL",
            Rule::Ssl => "SSL",
            Rule::Closure => "CLOSURE",
            Rule::Gamma => "GAMMA",
            Rule::Symmetry => "SYMMETRY",
            Rule::Vincular => "VINCULAR",
            Rule::Isolating => "ISOLATING",
            Rule::Classical => "CLASSICAL",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Rule::ALL
            .into_iter()
            .find(|r| r.tag() == s)
            .ok_or_else(|| Error::InvalidToken(s.into()))
    }
}

/// Rule-specific data of a step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StepDetail {
    None,
    /// The shading move taking `from` to `to`.
    Move(ShadeMove),
    /// Upper end of the sandwich for a closure step; `from` is the lower end.
    Upper(Mesh),
    /// Symmetry under which the images of `from` and `to` are already known
    /// to be coincident.
    Symmetry(Symmetry),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofStep {
    pub rule: Rule,
    pub from: MeshPattern,
    pub to: MeshPattern,
    pub detail: StepDetail,
}

impl ProofStep {
    pub fn new(rule: Rule, from: MeshPattern, to: MeshPattern) -> Self {
        ProofStep {
            rule,
            from,
            to,
            detail: StepDetail::None,
        }
    }

    /// A shading step, tagged `SL`, `DSL` or `SSL` by the move's shape.
    pub fn shading(from: &MeshPattern, mv: ShadeMove) -> Self {
        let rule = match mv.assignments() {
            [one] => match one.shape {
                ShadeShape::Single(_) => Rule::Sl,
                ShadeShape::Pair(_) => Rule::Dsl,
            },
            _ => Rule::Ssl,
        };
        ProofStep {
            rule,
            to: from.with_mesh(from.mesh().union(mv.added())),
            from: from.clone(),
            detail: StepDetail::Move(mv),
        }
    }

    pub fn closure(lower: &MeshPattern, member: Mesh, upper: Mesh) -> Self {
        ProofStep {
            rule: Rule::Closure,
            from: lower.clone(),
            to: lower.with_mesh(member),
            detail: StepDetail::Upper(upper),
        }
    }

    pub fn symmetry(from: MeshPattern, to: MeshPattern, s: Symmetry) -> Self {
        ProofStep {
            rule: Rule::Symmetry,
            from,
            to,
            detail: StepDetail::Symmetry(s),
        }
    }
}

impl fmt::Display for ProofStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ~ {}", self.rule, self.from, self.to)?;
        match &self.detail {
            StepDetail::None => Ok(()),
            StepDetail::Move(mv) => write!(f, " [{mv}]"),
            StepDetail::Upper(m) => write!(f, " [upper {m}]"),
            StepDetail::Symmetry(s) => write!(f, " [{s}]"),
        }
    }
}

/// Why a trace failed to verify.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("step {step}: {reason}")]
pub struct TraceError {
    pub step: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ProofTrace {
    steps: Vec<ProofStep>,
}

impl ProofTrace {
    pub fn new() -> Self {
        ProofTrace::default()
    }

    pub fn from_steps(steps: Vec<ProofStep>) -> Self {
        ProofTrace { steps }
    }

    pub fn push(&mut self, step: ProofStep) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: ProofTrace) {
        self.steps.extend(other.steps);
    }

    pub fn steps(&self) -> &[ProofStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays every step, checking its precondition against the recorded
    /// patterns and the coincidences proven by earlier steps.
    pub fn verify(&self) -> Result<(), TraceError> {
        self.replay().map(|_| ())
    }

    /// True when the trace verifies and connects `a` to `b`.
    pub fn proves(&self, a: &MeshPattern, b: &MeshPattern) -> bool {
        if a == b {
            return self.verify().is_ok();
        }
        match self.replay() {
            Ok(mut known) => known.connected(a, b),
            Err(_) => false,
        }
    }

    fn replay(&self) -> Result<Known, TraceError> {
        let mut known = Known::default();
        for (n, step) in self.steps.iter().enumerate() {
            check_step(step, &mut known).map_err(|reason| TraceError { step: n, reason })?;
            known.join(&step.from, &step.to);
        }
        Ok(known)
    }
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, step) in self.steps.iter().enumerate() {
            writeln!(f, "{:>3}. {step}", n + 1)?;
        }
        Ok(())
    }
}

/// Coincidences established so far.
#[derive(Default)]
struct Known {
    ids: BTreeMap<MeshPattern, usize>,
    sets: UnionFind,
}

impl Known {
    fn id(&mut self, pi: &MeshPattern) -> usize {
        if let Some(&id) = self.ids.get(pi) {
            return id;
        }
        let id = self.sets.push();
        self.ids.insert(pi.clone(), id);
        id
    }

    fn join(&mut self, a: &MeshPattern, b: &MeshPattern) {
        let (a, b) = (self.id(a), self.id(b));
        self.sets.union(a, b);
    }

    fn connected(&mut self, a: &MeshPattern, b: &MeshPattern) -> bool {
        if a == b {
            return true;
        }
        match (self.ids.get(a).copied(), self.ids.get(b).copied()) {
            (Some(x), Some(y)) => self.sets.same(x, y),
            _ => false,
        }
    }
}

fn check_step(step: &ProofStep, known: &mut Known) -> Result<(), String> {
    let (from, to) = (&step.from, &step.to);
    let same_perm = || {
        if from.perm() == to.perm() {
            Ok(())
        } else {
            Err(String::from("the patterns have different permutations"))
        }
    };
    match (step.rule, &step.detail) {
        (Rule::Sl | Rule::Dsl | Rule::Ssl, StepDetail::Move(mv)) => {
            same_perm()?;
            let shapes_ok = match step.rule {
                Rule::Sl => {
                    matches!(mv.assignments(), [a] if matches!(a.shape, ShadeShape::Single(_)))
                }
                Rule::Dsl => {
                    matches!(mv.assignments(), [a] if matches!(a.shape, ShadeShape::Pair(_)))
                }
                _ => true,
            };
            if !shapes_ok {
                return Err(format!("move does not match rule {}", step.rule));
            }
            if !mv.is_legal_for(from) {
                return Err(format!("move {mv} is not legal on {from}"));
            }
            if to.mesh() != from.mesh().union(mv.added()) {
                return Err(String::from(
                    "target is not the source plus the added squares",
                ));
            }
            Ok(())
        }
        (Rule::Closure, StepDetail::Upper(upper)) => {
            same_perm()?;
            if upper.pattern_len() != from.len() {
                return Err(String::from("upper mesh has the wrong grid"));
            }
            if !(from.mesh().is_subset(to.mesh()) && to.mesh().is_subset(*upper)) {
                return Err(String::from("member is not sandwiched"));
            }
            if !known.connected(from, &from.with_mesh(*upper)) {
                return Err(String::from(
                    "the sandwich ends are not yet proven coincident",
                ));
            }
            Ok(())
        }
        (Rule::Classical, StepDetail::None) => {
            same_perm()?;
            if !to.mesh().is_empty() {
                return Err(String::from("target is not classical"));
            }
            if !enclosed_diagonals(from).is_empty() {
                return Err(String::from("source has enclosed diagonals"));
            }
            Ok(())
        }
        (Rule::Vincular, StepDetail::None) => {
            same_perm()?;
            if !(is_vincular(from) && is_vincular(to)) {
                return Err(String::from("both patterns must be vincular"));
            }
            if enc_key(from) != enc_key(to) {
                return Err(String::from("enclosed diagonals differ"));
            }
            Ok(())
        }
        (Rule::Isolating, StepDetail::None) => {
            same_perm()?;
            if !(is_isolating(from) && is_isolating(to)) {
                return Err(String::from("both patterns must be isolating"));
            }
            if enc_key(from) != enc_key(to) {
                return Err(String::from("enclosed diagonals differ"));
            }
            if !known.connected(from, to) {
                return Err(String::from("the shading derivation is missing"));
            }
            Ok(())
        }
        (Rule::Gamma, StepDetail::None) => {
            let (g1, g2) = gamma_patterns();
            let matched = Symmetry::ALL.into_iter().any(|s| {
                let (a, b) = (g1.transformed(s), g2.transformed(s));
                (from == &a && to == &b) || (from == &b && to == &a)
            });
            if matched {
                Ok(())
            } else {
                Err(String::from("not a symmetric image of the gamma pair"))
            }
        }
        (Rule::Symmetry, StepDetail::Symmetry(s)) => {
            if known.connected(&from.transformed(*s), &to.transformed(*s)) {
                Ok(())
            } else {
                Err(format!("images under {s} are not yet proven coincident"))
            }
        }
        (rule, _) => Err(format!("missing or unexpected detail for {rule}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shading::ssl_moves;

    fn pat(s: &str) -> MeshPattern {
        s.parse().unwrap()
    }

    fn step_to(from: &MeshPattern, to: &MeshPattern) -> ProofStep {
        let added = to.mesh().difference(from.mesh());
        let mv = ssl_moves(from)
            .into_iter()
            .find(|m| m.added() == added)
            .expect("move exists");
        ProofStep::shading(from, mv)
    }

    #[test]
    fn shading_chain_with_closure() {
        let p1 = pat("12:(2,0)");
        let p2 = pat("12:(0,0)(1,0)(2,0)");
        let p3 = pat("12:(0,0)(1,0)(1,1)(1,2)(2,0)");
        let mut trace = ProofTrace::new();
        trace.push(step_to(&p1, &p2));
        trace.push(step_to(&p2, &p3));
        let between: Mesh = pat("12:(0,0)(1,1)(2,0)").mesh();
        trace.push(ProofStep::closure(&p1, between, p3.mesh()));
        trace.verify().unwrap();
        assert_eq!(trace.steps()[0].rule, Rule::Dsl);
        assert!(trace.proves(&p1, &pat("12:(0,0)(1,1)(2,0)")));
        assert!(!trace.proves(&p1, &pat("12")));
    }

    #[test]
    fn closure_needs_an_earlier_proof() {
        let p1 = pat("12:(2,0)");
        let upper = pat("12:(0,0)(1,0)(1,1)(1,2)(2,0)").mesh();
        let trace = ProofTrace::from_steps(alloc::vec![ProofStep::closure(
            &p1,
            pat("12:(0,0)(2,0)").mesh(),
            upper
        )]);
        let err = trace.verify().unwrap_err();
        assert_eq!(err.step, 0);
    }

    #[test]
    fn forged_steps_fail() {
        let from = pat("12:(2,0)");
        let mut step = step_to(&from, &pat("12:(0,0)(1,0)(2,0)"));
        step.to = pat("12:(0,0)(1,0)(1,1)(2,0)");
        assert!(ProofTrace::from_steps(alloc::vec![step]).verify().is_err());

        let classical = ProofStep::new(Rule::Classical, pat("12:(2,0)"), pat("12"));
        assert!(ProofTrace::from_steps(alloc::vec![classical])
            .verify()
            .is_err());
        let classical = ProofStep::new(Rule::Classical, pat("213:(1,2)(2,0)"), pat("213"));
        assert!(ProofTrace::from_steps(alloc::vec![classical])
            .verify()
            .is_ok());
    }

    #[test]
    fn symmetry_transfer() {
        let a = pat("12:(2,0)");
        let b = pat("12:(0,0)(1,0)(2,0)");
        let s = Symmetry::INVERSE;
        let mut trace = ProofTrace::new();
        trace.push(step_to(&a, &b));
        trace.push(ProofStep::symmetry(a.transformed(s), b.transformed(s), s));
        trace.verify().unwrap();
        assert!(trace.proves(&a.transformed(s), &b.transformed(s)));

        let lone =
            ProofTrace::from_steps(alloc::vec![ProofStep::symmetry(a.clone(), b.clone(), s)]);
        assert!(lone.verify().is_err());
    }

    #[test]
    fn rule_tags_round_trip() {
        for r in Rule::ALL {
            assert_eq!(r.tag().parse::<Rule>().unwrap(), r);
        }
        assert!("SHADE".parse::<Rule>().is_err());
    }
}
