use proptest::prelude::*;

use smatch_core::analysis::{classify_worst_case, is_stable, score, Score};
use smatch_core::generate::random_instance_seeded;
use smatch_core::oracle::{enumerate_stable, proposer_optimal, DEFAULT_CAP};
use smatch_core::prefs::{parse_instance, serialize_instance, PreferenceInstance, Side};
use smatch_core::{gsa_solve, Matching, Orientation};

fn instance(max_n: usize) -> impl Strategy<Value = PreferenceInstance> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_instance_seeded(n, seed))
}

fn men_ranks(inst: &PreferenceInstance, m: &Matching) -> Vec<u32> {
    m.pairs()
        .iter()
        .map(|&(man, woman)| inst.man_rank(man, woman).unwrap().get())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ranks_form_a_bijection(inst in instance(16)) {
        let n = inst.n() as u32;
        for side in [Side::Men, Side::Women] {
            let (owners, partners): (Vec<u32>, Vec<u32>) = match side {
                Side::Men => (inst.men_ids().iter().map(|m| m.0).collect(), inst.women_ids().iter().map(|w| w.0).collect()),
                Side::Women => (inst.women_ids().iter().map(|w| w.0).collect(), inst.men_ids().iter().map(|m| m.0).collect()),
            };
            for &o in &owners {
                let mut ranks: Vec<u32> = partners.iter().map(|&p| inst.rank_of(side, o, p).unwrap().get()).collect();
                ranks.sort_unstable();
                prop_assert_eq!(ranks, (1..=n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn deletion_keeps_instances_valid(inst in instance(16)) {
        let n = inst.n();
        for (&m, &w) in inst.men_ids().iter().zip(inst.women_ids()) {
            let reduced = inst.delete_pair(m, w).unwrap();
            prop_assert_eq!(reduced.n(), n - 1);
            prop_assert!(!reduced.contains_man(m) && !reduced.contains_woman(w));
            for &man in reduced.men_ids() {
                let list = reduced.man_prefs(man).unwrap();
                prop_assert_eq!(list.len(), n - 1);
                // relative order preserved
                let original: Vec<_> = inst.man_prefs(man).unwrap().iter().copied().filter(|x| *x != w).collect();
                prop_assert_eq!(list, original.as_slice());
            }
            for &woman in reduced.women_ids() {
                prop_assert_eq!(reduced.woman_prefs(woman).unwrap().len(), n - 1);
            }
        }
    }

    #[test]
    fn parse_inverts_serialize(inst in instance(16)) {
        let text = serialize_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn solve_output_is_stable_and_bounded(inst in instance(64)) {
        let n = inst.n() as u64;
        for o in [Orientation::MenPropose, Orientation::WomenPropose] {
            let (m, c) = gsa_solve(&inst, o);
            prop_assert!(m.is_perfect_on(&inst));
            prop_assert!(is_stable(&inst, &m).unwrap().is_stable());
            prop_assert!(c.proposals <= n * n);
            prop_assert!(c.proposals >= n);
            prop_assert_eq!(gsa_solve(&inst, o), (m, c));
        }
    }

    #[test]
    fn solve_is_proposer_optimal(inst in instance(7)) {
        let all = enumerate_stable(&inst, DEFAULT_CAP).unwrap();
        prop_assert!(!all.is_empty());
        for m in &all {
            prop_assert!(is_stable(&inst, m).unwrap().is_stable());
        }
        let (men, _) = gsa_solve(&inst, Orientation::MenPropose);
        let (women, _) = gsa_solve(&inst, Orientation::WomenPropose);
        prop_assert_eq!(&proposer_optimal(&inst, &all, Orientation::MenPropose).unwrap(), &men);
        prop_assert_eq!(&proposer_optimal(&inst, &all, Orientation::WomenPropose).unwrap(), &women);
        let best = men_ranks(&inst, &men);
        for m in &all {
            for (b, r) in best.iter().zip(men_ranks(&inst, m)) {
                prop_assert!(*b <= r);
            }
        }
        // the women-proposing result is the men's worst
        let worst = men_ranks(&inst, &women);
        for m in &all {
            for (w, r) in worst.iter().zip(men_ranks(&inst, m)) {
                prop_assert!(*w >= r);
            }
        }
    }

    #[test]
    fn unique_stable_matches_oracle_count(inst in instance(7)) {
        let report = classify_worst_case(&inst);
        let count = enumerate_stable(&inst, DEFAULT_CAP).unwrap().len();
        prop_assert_eq!(report.unique_stable, count == 1);
        prop_assert_eq!(report.man_pessimal, report.unique_stable);
        if report.no_first_choice {
            prop_assert!(report.proposer_score >= Score(2 * inst.n() as u64));
        }
    }

    #[test]
    fn score_drops_by_removed_rank(inst in instance(16)) {
        let (m, _) = gsa_solve(&inst, Orientation::MenPropose);
        let total = score(&inst, &m, Orientation::MenPropose).unwrap();
        let n = inst.n() as u64;
        prop_assert!(total.0 >= n && total.0 <= n * n);
        for &(man, woman) in m.pairs() {
            let rank = u64::from(inst.man_rank(man, woman).unwrap().get());
            let less = score(&inst, &m.without(man, woman), Orientation::MenPropose).unwrap();
            prop_assert_eq!(less.0 + rank, total.0);
            prop_assert!(less < total);
        }
    }
}

#[test]
fn distinct_first_choices_take_n_proposals() {
    // cyclic lists: proposer i ranks receiver i first
    for n in 1..=12u32 {
        let rows: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|k| (i + k) % n + 1).collect()).collect();
        let inst = PreferenceInstance::new(rows.clone(), rows).unwrap();
        for o in [Orientation::MenPropose, Orientation::WomenPropose] {
            assert_eq!(gsa_solve(&inst, o).1.proposals, u64::from(n));
        }
    }
}
