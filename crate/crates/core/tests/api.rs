use torus_cobordism::bounds::{report, tau};
use torus_cobordism::export::{profile_json, read_cache_file, write_cache_file, ProfileDocument};
use torus_cobordism::planner::{best_upper, validate_plan, PlanDocument, SearchBudget};
use torus_cobordism::{profile, signature_at, ProfileCache, Theta, TorusLink};

fn t(p: u64, q: u64) -> TorusLink {
    TorusLink::new(p, q).unwrap()
}

#[test]
fn profile_formats_round_trip() {
    for (p, q) in [(2, 3), (4, 6), (5, 12), (7, 7), (1, 9)] {
        let prof = profile(&t(p, q));
        let doc: ProfileDocument = serde_json::from_str(&profile_json(&prof)).unwrap();
        assert_eq!(doc.into_profile().unwrap(), prof);
        assert_eq!(read_cache_file(&write_cache_file(&prof)).unwrap(), prof);
    }
}

#[test]
fn plans_round_trip_and_validate() {
    for (a, b, c, d) in [(5, 8, 4, 11), (3, 100, 5, 27), (2, 9, 6, 6), (7, 3, 3, 7)] {
        let best = best_upper(a, b, c, d, SearchBudget::new(30)).unwrap();
        let doc: PlanDocument = serde_json::from_str(&best.plan.to_json()).unwrap();
        assert_eq!(doc.plan, best.plan);
        assert!(validate_plan(&best.plan).is_valid());
    }
}

#[test]
fn report_is_consistent() {
    let cache = ProfileCache::new();
    let r = report(3, 7, 4, 5, SearchBudget::new(10), &cache).unwrap();
    assert_eq!(r.tau, tau(&t(3, 7), &t(4, 5), &cache));
    assert!(r.tau <= r.upper);
    let w = r.witness_theta.unwrap();
    let gap = signature_at(&t(3, 7), &w).abs_diff(signature_at(&t(4, 5), &w));
    assert_eq!(gap, r.delta_sigma_sup);
}

#[test]
fn cache_directory() {
    let dir = std::env::temp_dir().join(format!("torus-api-cache-{}", std::process::id()));
    let first = ProfileCache::with_dir(&dir).get(&t(5, 9));
    let again = ProfileCache::with_dir(&dir).get(&t(5, 9));
    assert_eq!(first, again);
    assert_eq!(again.value_at(&Theta::half()), signature_at(&t(5, 9), &Theta::half()));
    std::fs::remove_dir_all(dir).ok();
}
