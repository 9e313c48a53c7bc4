//! Full-pipeline verdicts for the four parametrized families at their
//! default parameters and the integral reference case.

use ellconv::repdecomp::DecomposeConfig;
use ellconv::tannaka::{beauville_on_e_tuple, verify_g2, CaseLabel, SevenPointSheaf};

#[test]
fn all_five_cases_conclude_g2() {
    let cfg = DecomposeConfig::default();
    for case in [
        CaseLabel::I,
        CaseLabel::IIi,
        CaseLabel::IIii,
        CaseLabel::IIiii,
    ] {
        let sheaf =
            SevenPointSheaf::from_case(case, SevenPointSheaf::default_params(case)).unwrap();
        let report = verify_g2(&sheaf, &cfg).unwrap();
        assert_eq!(
            report.conclusion, "G2",
            "case {case:?}: {:?}",
            report.reasons
        );
        assert!(report.reasons.is_empty());
        assert_eq!(report.euler_char, 7);
        assert_eq!(report.rank_mod_14, 2);
        assert_eq!(report.w_dim, 28);
        assert!(report.chi_bookkeeping_ok);
        let summand = report.summand_n.as_ref().unwrap();
        assert_eq!(summand.support.len(), 7);
        assert_eq!(summand.intertwiner_dim, 1);
    }

    let report = verify_g2(&beauville_on_e_tuple(), &cfg).unwrap();
    assert_eq!(report.conclusion, "G2", "{:?}", report.reasons);
    let chis: Vec<(usize, usize)> = report
        .constituents
        .iter()
        .map(|c| (c.rank, c.chi))
        .collect();
    assert_eq!(chis, vec![(2, 7), (8, 14), (18, 27)]);
}
