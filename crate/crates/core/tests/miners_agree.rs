use docmine_core::{brute_force_mine, mine_modified, mine_traditional, Itemset, TransactionDB};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_db(rng: &mut ChaCha8Rng) -> TransactionDB {
    let n_items = rng.gen_range(1..=12);
    let n_tx = rng.gen_range(1..=40);
    let density = rng.gen_range(0.2..0.8);
    let txs = (0..n_tx).map(|_| (0..n_items as u32).filter(|_| rng.gen_bool(density)).collect()).collect();
    let names = (0..n_items).map(|i| format!("i{i}")).collect();
    TransactionDB::from_transactions(names, txs).unwrap()
}

fn as_set(levels: &[Vec<(Itemset, usize)>]) -> Vec<(Itemset, usize)> {
    let mut all: Vec<_> = levels.iter().flatten().cloned().collect();
    all.sort();
    all
}

#[test]
fn all_three_miners_agree_on_random_databases() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..200 {
        let db = random_db(&mut rng);
        let min_sup = rng.gen_range(1..=5);
        let oracle = brute_force_mine(&db, min_sup).unwrap();
        let (trad, ts) = mine_traditional(&db, min_sup).unwrap();
        let (modi, ms) = mine_modified(&db, min_sup).unwrap();
        assert_eq!(as_set(trad.levels()), as_set(oracle.levels()), "traditional, case {case}");
        assert_eq!(as_set(modi.levels()), as_set(oracle.levels()), "modified, case {case}");
        assert_eq!(trad.maximal(), oracle.maximal(), "case {case}");
        assert_eq!(modi.maximal(), oracle.maximal(), "case {case}");
        assert_eq!(ms.db_scans, 1);
        assert_eq!(ts.db_scans, ts.counted_levels());
    }
}

#[test]
fn occurrence_prune_never_admits_more_than_the_join() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let db = random_db(&mut rng);
        let min_sup = rng.gen_range(1..=4);
        let (_, ts) = mine_traditional(&db, min_sup).unwrap();
        let (_, ms) = mine_modified(&db, min_sup).unwrap();
        for lm in &ms.levels {
            if let Some(lt) = ts.level(lm.k) {
                assert!(lm.after_occurrence_prune <= lt.generated, "level {}", lm.k);
            }
        }
    }
}
