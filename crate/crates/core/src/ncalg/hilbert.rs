use crate::report::CertReport;

/// Coefficients of `h · (1 − t^a)^{-1} · (1 − t^b)^{-1}` up to `len` terms.
/// `h` is read as a polynomial: missing coefficients count as zero.
pub fn series_quotient(h: &[usize], a: u32, b: u32, len: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..len).map(|i| h.get(i).copied().unwrap_or(0)).collect();
    for step in [a as usize, b as usize] {
        for i in step..len {
            out[i] += out[i - step];
        }
    }
    out
}

/// Compares `h_b` with `h_a / ((1 − t^{dy1})(1 − t^{dy2}))` coefficient-wise.
pub fn series_quotient_check(h_a: &[usize], dy1: u32, dy2: u32, h_b: &[usize]) -> CertReport {
    let mut report = CertReport::new("hilbert series quotient");
    let len = h_b.len();
    if len > 0 {
        report = report.with_bound(len as u32 - 1);
    }
    if h_a.len() < len {
        report.note(format!(
            "base series given to degree {}; treated as a polynomial beyond it",
            h_a.len() as i64 - 1
        ));
    }
    let expected = series_quotient(h_a, dy1, dy2, len);
    report.fact("expected", &expected);
    report.fact("observed", h_b);
    if let Some(d) = (0..len).find(|&d| expected[d] != h_b[d]) {
        report.fail(
            format!("degree {d}"),
            format!("expected {}, counted {}", expected[d], h_b[d]),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn quantum_plane_over_plane() {
        let r = series_quotient_check(&[1, 2, 3, 4, 5], 1, 1, &[1, 4, 10, 20, 35]);
        assert!(r.passed());
    }

    #[test]
    fn trivial_base() {
        assert_eq!(series_quotient(&[1], 1, 1, 5), vec![1, 2, 3, 4, 5]);
        assert!(series_quotient_check(&[1], 1, 1, &[1, 2, 3, 4]).passed());
    }

    #[test]
    fn weighted_degrees() {
        // 1/((1-t)(1-t^2)) = 1 + t + 2t^2 + 2t^3 + 3t^4
        assert_eq!(series_quotient(&[1], 1, 2, 5), vec![1, 1, 2, 2, 3]);
    }

    #[test]
    fn wrong_counts_name_first_bad_degree() {
        let r = series_quotient_check(&[1, 2, 3, 4, 5], 1, 1, &[1, 4, 10, 21, 36]);
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.witnesses[0].label, "degree 3");
    }
}
