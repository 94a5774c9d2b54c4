use rayon::prelude::*;

use crate::report::CertReport;

use super::{Monomial, NcPoly, ReductionSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

/// A word on which two rules apply.
///
/// The word always starts with the lead of `rule_a`; the lead of `rule_b`
/// sits at `offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub rule_a: usize,
    pub rule_b: usize,
    pub word: Monomial,
    pub offset: usize,
}

impl Ambiguity {
    /// The two one-step reductions of the ambiguous word.
    pub fn routes(&self, rs: &ReductionSystem) -> (NcPoly, NcPoly) {
        (
            rs.rewrite_at(&self.word, self.rule_a, 0),
            rs.rewrite_at(&self.word, self.rule_b, self.offset),
        )
    }
}

/// All minimal overlap ambiguities (`u·v = lead_a`, `v·z = lead_b`, with
/// `u, v, z` nonempty) and all inclusion ambiguities.
pub fn overlaps(rs: &ReductionSystem) -> Vec<Ambiguity> {
    let rules = rs.rules();
    let alphabet = rs.alphabet();
    let mut out = Vec::new();
    for (ia, a) in rules.iter().enumerate() {
        let wa = a.lead.word();
        for (ib, b) in rules.iter().enumerate() {
            let wb = b.lead.word();
            for k in 1..wa.len().min(wb.len()) {
                if wa[wa.len() - k..] == wb[..k] {
                    let mut word = wa.to_vec();
                    word.extend_from_slice(&wb[k..]);
                    out.push(Ambiguity {
                        kind: AmbiguityKind::Overlap,
                        rule_a: ia,
                        rule_b: ib,
                        word: alphabet.monomial(&word),
                        offset: wa.len() - k,
                    });
                }
            }
            if ia != ib && wb.len() <= wa.len() {
                for pos in 0..=wa.len() - wb.len() {
                    if wa[pos..pos + wb.len()] == *wb {
                        out.push(Ambiguity {
                            kind: AmbiguityKind::Inclusion,
                            rule_a: ia,
                            rule_b: ib,
                            word: a.lead.clone(),
                            offset: pos,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Resolves every ambiguity of degree at most `max_degree`.
pub fn check_confluence(rs: &ReductionSystem, max_degree: u32) -> CertReport {
    let alphabet = rs.alphabet();
    let mut report = CertReport::new("confluence").with_bound(max_degree);
    let all = overlaps(rs);
    let (in_range, beyond): (Vec<&Ambiguity>, Vec<&Ambiguity>) =
        all.iter().partition(|a| a.word.degree() <= max_degree);
    if max_degree < rs.max_rule_degree() {
        report.note(format!(
            "bound {max_degree} is below the largest rule degree {}",
            rs.max_rule_degree()
        ));
    }
    let outcomes: Vec<Option<(NcPoly, NcPoly)>> = in_range
        .par_iter()
        .map(|amb| {
            let (ra, rb) = amb.routes(rs);
            let (na, nb) = (rs.normal_form(&ra), rs.normal_form(&rb));
            (na != nb).then_some((na, nb))
        })
        .collect();
    let mut failures = 0usize;
    for (amb, outcome) in in_range.iter().zip(outcomes) {
        if let Some((na, nb)) = outcome {
            failures += 1;
            let kind = match amb.kind {
                AmbiguityKind::Overlap => "overlap",
                AmbiguityKind::Inclusion => "inclusion",
            };
            report.fail(
                format!("{kind} {}", alphabet.render(&amb.word)),
                format!(
                    "via {}: {}; via {}: {}",
                    alphabet.render(&rs.rules()[amb.rule_a].lead),
                    na.render(alphabet),
                    alphabet.render(&rs.rules()[amb.rule_b].lead),
                    nb.render(alphabet)
                ),
            );
        }
    }
    report.fact("ambiguities_checked", in_range.len());
    report.fact("ambiguities_unresolved", failures);
    if !beyond.is_empty() {
        report.fact("ambiguities_beyond_bound", beyond.len());
        report.note(format!(
            "inconclusive beyond degree {max_degree}: {} ambiguities not examined",
            beyond.len()
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::ncalg::{Alphabet, Rule};
    use crate::report::Verdict;

    fn rule(a: &Alphabet, lead: &[u16], rhs: NcPoly) -> Rule {
        Rule {
            lead: a.monomial(lead),
            rhs,
        }
    }

    #[test]
    fn single_rule_has_no_self_overlap() {
        let a = Alphabet::uniform(&["x1", "x2"]);
        let f = Field::Rational;
        let rhs = NcPoly::word(&a, &[0, 1], f).scale(&f.from_i64(-1));
        let rs = ReductionSystem::from_rules(f, a.clone(), vec![rule(&a, &[1, 0], rhs)]).unwrap();
        assert!(overlaps(&rs).is_empty());
        assert!(check_confluence(&rs, 6).passed());
    }

    #[test]
    fn empty_rule_set() {
        let rs = ReductionSystem::free(Field::Rational, Alphabet::uniform(&["x"]));
        assert!(overlaps(&rs).is_empty());
    }

    #[test]
    fn extension_style_overlap_word() {
        let a = Alphabet::uniform(&["x1", "y1", "y2"]);
        let f = Field::Rational;
        let rules = vec![
            rule(&a, &[2, 1], NcPoly::word(&a, &[1, 2], f)),
            rule(&a, &[1, 0], NcPoly::word(&a, &[0, 1], f)),
        ];
        let rs = ReductionSystem::from_rules(f, a.clone(), rules).unwrap();
        let words: Vec<String> = overlaps(&rs).iter().map(|o| a.render(&o.word)).collect();
        assert_eq!(words, vec!["y2*y1*x1"]);
    }

    #[test]
    fn unresolvable_overlap_fails_with_witness() {
        // z*y*x reduces to x*x*x one way and to 0 the other
        let a = Alphabet::uniform(&["x", "y", "z"]);
        let f = Field::Rational;
        let rules = vec![
            rule(&a, &[2, 1], NcPoly::word(&a, &[0, 0], f)),
            rule(&a, &[1, 0], NcPoly::zero()),
        ];
        let rs = ReductionSystem::from_rules(f, a, rules).unwrap();
        let r = check_confluence(&rs, 3);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.witnesses[0].label.contains("z*y*x"));
        let r = check_confluence(&rs, 2);
        assert!(r.passed());
        assert!(r.notes.iter().any(|n| n.contains("inconclusive beyond degree 2")));
    }
}
