//! Definition-level cross-checks of the cocycle transformation matrix
//! against an independent fold-based evaluation of the deformed words.

mod common;

use common::{eval_cocycle, oracle_transform, random_invertible, random_tuple, unflatten};
use ellconv::braid::{
    braid_action, global_alpha_deformation, global_beta_deformation, BraidWord, GeneratorWord,
    Letter, TupleDeformation,
};
use ellconv::cocycle::build_cocycle_space;
use ellconv::linalg::{Mat, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The matrix assembled from suffix products must transform every basis
/// evaluation exactly as the fold-based oracle does.
fn assert_matrix_matches_oracle(
    tuple: &ellconv::monodromy::MonodromyTuple,
    deformation: &TupleDeformation,
    twist: &Mat,
) {
    let space = build_cocycle_space(tuple).unwrap();
    let full = space
        .full_transformation_matrix(deformation, twist)
        .unwrap();
    let n = tuple.rank;
    let gens = tuple.locals.len() + 2;
    let total = n * gens;
    for slot in 0..total {
        let mut unit = vec![Rat::zero(); total];
        unit[slot] = Rat::one();
        let values = unflatten(&unit, n);
        let transformed = oracle_transform(tuple, &values, deformation, twist);
        let flattened: Vec<Rat> = transformed.into_iter().flatten().collect();
        let matrix_row = full.apply_row(&unit);
        assert_eq!(flattened, matrix_row, "slot {slot} disagrees");
    }
}

#[test]
fn cocycle_rule_fold_matches_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let t = random_tuple(2, 2, &mut rng);
    // delta(w1 w2) = delta(w1) rho(w2) + delta(w2) for the fold evaluation
    let values = vec![
        vec![Rat::from_int(1), Rat::from_int(2)],
        vec![Rat::from_int(-1), Rat::from_int(3)],
        vec![Rat::from_int(0), Rat::from_int(1)],
        vec![Rat::from_int(2), Rat::from_int(0)],
    ];
    let w1 = GeneratorWord(vec![Letter(1, 1), Letter(3, -1), Letter(2, 1)]);
    let w2 = GeneratorWord(vec![Letter(4, 1), Letter(1, -1)]);
    let lhs = eval_cocycle(&t, &values, &w1.concat(&w2));
    let rho_w2 = t.evaluate_word(&w2).unwrap();
    let part = rho_w2.apply_row(&eval_cocycle(&t, &values, &w1));
    let rhs: Vec<Rat> = part
        .iter()
        .zip(&eval_cocycle(&t, &values, &w2))
        .map(|(a, b)| a + b)
        .collect();
    assert_eq!(lhs, rhs);
}

#[test]
fn random_braid_deformations_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut instances = 0usize;
    while instances < 100 {
        let rank = rng.gen_range(1..=2);
        let locals = rng.gen_range(2..=3);
        let t = random_tuple(rank, locals, &mut rng);
        let id = TupleDeformation::identity(locals);
        let deformation = match rng.gen_range(0..3) {
            0 => {
                let len = rng.gen_range(1..=6);
                let word: Vec<i32> = (0..len)
                    .map(|_| {
                        let k = rng.gen_range(1..=(locals as i32) - 1);
                        if rng.gen_bool(0.5) {
                            k
                        } else {
                            -k
                        }
                    })
                    .collect();
                braid_action(&BraidWord(word), &id).unwrap()
            }
            1 => global_alpha_deformation(1, locals - 1),
            _ => global_beta_deformation(locals - 1, 1),
        };
        let twist = if rng.gen_bool(0.5) {
            Mat::identity(rank)
        } else {
            random_invertible(rank, &mut rng)
        };
        assert_matrix_matches_oracle(&t, &deformation, &twist);
        instances += 1;
    }
}

#[test]
fn quotient_action_matches_oracle_on_reference_case() {
    // geometric deformations on the reference seven-point convolution:
    // lift a quotient basis vector, transform definitionally, project back
    let sheaf = ellconv::tannaka::beauville_on_e_tuple();
    let cm = ellconv::cocycle::convolution_monodromy(&sheaf.tuple, &sheaf.tuple).unwrap();
    let space = &cm.space;
    let tuple = &cm.convolution.tuple;
    let n = tuple.rank;
    let id = TupleDeformation::identity(14);
    let deformation = braid_action(&ellconv::braid::delta_words()[18], &id).unwrap();
    let twist = Mat::identity(n);
    for b in 0..space.w_dim {
        let lift = space.section.row_to_vec(b);
        let values = unflatten(&lift, n);
        let transformed: Vec<Rat> = oracle_transform(tuple, &values, &deformation, &twist)
            .into_iter()
            .flatten()
            .collect();
        let class = space.class_map.apply_row(&transformed);
        let expected = cm.matrices[18].induced.row_to_vec(b);
        assert_eq!(class, expected, "quotient row {b}");
    }
}
