use lmhodge::corpus::{corpus_run, corpus_run_all, corpus_run_with, Window, CORPUS};

#[test]
fn every_item_passes() {
    let reports = corpus_run_all();
    assert_eq!(reports.len(), CORPUS.len());
    for (r, name) in reports.iter().zip(CORPUS) {
        assert_eq!(r.name, name);
        assert!(!r.claims.is_empty(), "{name}");
        assert!(r.pass, "{name}: {:?}", r.failures());
    }
}

#[test]
fn window_dependent_items_pass_on_other_windows() {
    for name in ["7.1.2", "7.1.3", "7.3.6"] {
        for win in [Window { lo: -1, hi: 1 }, Window { lo: 0, hi: 4 }] {
            let r = corpus_run_with(name, win).unwrap();
            assert!(r.pass, "{name} {win:?}: {:?}", r.failures());
        }
    }
}

#[test]
fn bad_names_and_windows_are_rejected() {
    assert!(corpus_run("7.9.9").is_err());
    assert!(corpus_run_with("7.1.2", Window { lo: 2, hi: 2 }).is_err());
    assert_eq!("-2:3".parse::<Window>().unwrap(), Window { lo: -2, hi: 3 });
    assert!("3:-2".parse::<Window>().is_err());
    assert!("3".parse::<Window>().is_err());
}
