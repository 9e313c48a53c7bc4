//! Integration checks on the reference seven-point pipeline that cut across
//! module boundaries.

mod common;

use ellconv::braid::{braid_action, delta_words, BraidWord, TupleDeformation};
use ellconv::cocycle::convolution_monodromy;
use ellconv::linalg::Mat;
use ellconv::repdecomp::{decompose, DecomposeConfig, Representation};
use ellconv::tannaka::beauville_on_e_tuple;

#[test]
fn reference_pipeline_cross_checks() {
    let sheaf = beauville_on_e_tuple();

    // the sheaf's own cocycle space already computes its Euler number
    let own_space = ellconv::cocycle::build_cocycle_space(&sheaf.tuple).unwrap();
    assert_eq!(own_space.w_dim, 7);

    let cm = convolution_monodromy(&sheaf.tuple, &sheaf.tuple).unwrap();

    // the convolution tuple's own Euler characteristic equals the generic
    // rank prediction and the quotient dimension
    assert_eq!(cm.convolution.tuple.euler_char().unwrap(), 28);
    assert_eq!(cm.w_dim(), 28);

    // trivial input handle makes both twists the identity
    assert!(cm.convolution.twist_alpha.is_identity());
    assert!(cm.convolution.twist_beta.is_identity());

    // second tensor block is built from reversed suffix-product conjugates
    let locals = &sheaf.tuple.locals;
    let mut suffix = Mat::identity(2); // running product A_{8-i} ... A_7
    for i in 1..=7usize {
        suffix = &locals[7 - i] * &suffix;
        let conj = &(&suffix.inverse().unwrap() * &locals[7 - i]) * &suffix;
        let expected = ellconv::linalg::kronecker(&Mat::identity(2), &conj);
        assert_eq!(cm.convolution.tuple.locals[6 + i], expected, "block {i}");
    }

    // transformation matrices are multiplicative over braid-word
    // concatenation, on the full space and on the quotient
    let words = delta_words();
    let id = TupleDeformation::identity(14);
    let idt = Mat::identity(4);
    for (i, j) in [(18usize, 16usize), (17, 18), (15, 17)] {
        let concat = BraidWord(
            words[i]
                .0
                .iter()
                .chain(&words[j].0)
                .copied()
                .collect::<Vec<i32>>(),
        );
        let composite = cm
            .space
            .deformation_matrix(&braid_action(&concat, &id).unwrap(), &idt)
            .unwrap();
        let product = &cm.matrices[i].induced * &cm.matrices[j].induced;
        assert_eq!(
            composite.induced,
            product,
            "concat of deltas {} and {}",
            i + 1,
            j + 1
        );
        let full_product = &cm.matrices[i].full * &cm.matrices[j].full;
        assert_eq!(composite.full, full_product);
    }

    // restricted generators inherit the product relation of the quotient
    let rep = Representation::new(cm.matrices.iter().map(|m| m.induced.clone()).collect());
    let constituents = decompose(&rep, &DecomposeConfig::default()).unwrap();
    assert_eq!(
        constituents
            .iter()
            .map(|c| c.rank * c.multiplicity)
            .sum::<usize>(),
        28
    );
    for c in &constituents {
        let mut acc = Mat::identity(c.rank);
        for g in &c.restricted_generators[..19] {
            acc = &acc * g;
        }
        let m20 = &c.restricted_generators[19];
        let m21 = &c.restricted_generators[20];
        let comm = &(&(m20 * m21) * &m20.inverse().unwrap()) * &m21.inverse().unwrap();
        assert!((&acc * &comm).is_identity(), "rank {} relation", c.rank);
    }

    // decomposition outcome is seed-independent as a multiset
    let alt = decompose(
        &rep,
        &DecomposeConfig {
            seed: 12345,
            ..DecomposeConfig::default()
        },
    )
    .unwrap();
    let key = |cs: &[ellconv::repdecomp::Constituent]| {
        let mut v: Vec<(usize, usize)> = cs.iter().map(|c| (c.rank, c.multiplicity)).collect();
        v.sort_unstable();
        v
    };
    assert_eq!(key(&constituents), key(&alt));
}
