use liquidrank::handle::{is_handle_char, MAX_HANDLE_LEN};
use liquidrank::ingest::{write_tweets, ParseMode, TweetFormat};
use liquidrank::{
    build_graph, extract_mentions, parse_tweets, to_interactions, Handle, InteractionRecord,
    TimeWindow, TweetRecord,
};
use proptest::prelude::*;

fn handle() -> impl Strategy<Value = Handle> {
    "[A-Za-z0-9_]{1,15}".prop_map(|s| Handle::new(&s).unwrap())
}

/// Post text mixing prose, unicode, punctuation, mentions and near-mentions.
fn text() -> impl Strategy<Value = String> {
    let piece = prop_oneof![
        "[a-z ]{0,8}",
        "@[A-Za-z0-9_]{0,20}",
        "[@.,!:()\"\n]",
        "\\PC{0,3}",
    ];
    proptest::collection::vec(piece, 0..8).prop_map(|v| v.concat())
}

fn tweet() -> impl Strategy<Value = TweetRecord> {
    (handle(), text(), 0u64..2_000_000_000).prop_map(|(author, text, timestamp)| TweetRecord {
        author,
        text,
        timestamp,
    })
}

fn records() -> impl Strategy<Value = Vec<InteractionRecord>> {
    let names = prop::sample::select(vec!["a", "b", "c", "d", "e"]);
    proptest::collection::vec((names.clone(), names, 0u64..100), 0..60).prop_map(|v| {
        v.into_iter()
            .filter_map(|(r, e, t)| {
                InteractionRecord::new(Handle::new(r).unwrap(), Handle::new(e).unwrap(), t)
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn mentions_are_valid_handles(t in text()) {
        for m in extract_mentions(&t) {
            prop_assert!(m.as_str().len() <= MAX_HANDLE_LEN);
            prop_assert!(m.as_str().chars().all(|c| is_handle_char(c) && !c.is_ascii_uppercase()));
        }
    }

    #[test]
    fn interaction_count_and_validity(tweets in proptest::collection::vec(tweet(), 0..20)) {
        let out = to_interactions(&tweets);
        let expected: usize = tweets
            .iter()
            .map(|t| extract_mentions(&t.text).iter().filter(|m| **m != t.author).count())
            .sum();
        prop_assert_eq!(out.len(), expected);
        for r in &out {
            prop_assert_ne!(r.rater(), r.ratee());
        }
    }

    #[test]
    fn tweets_round_trip(tweets in proptest::collection::vec(tweet(), 0..20), csv in any::<bool>()) {
        let format = if csv { TweetFormat::Csv } else { TweetFormat::Jsonl };
        let mut buf = Vec::new();
        write_tweets(&mut buf, &tweets, format).unwrap();
        let parsed = parse_tweets(buf.as_slice(), format, ParseMode::Strict).unwrap();
        prop_assert!(parsed.malformed.is_empty());
        prop_assert_eq!(parsed.tweets, tweets);
    }

    #[test]
    fn graph_weight_equals_records_in_window(recs in records(), start in 0u64..100, len in 1u64..100) {
        let window = TimeWindow::new(start, Some(start + len)).unwrap();
        let g = build_graph(&recs, window);
        let inside = recs.iter().filter(|r| window.contains(r.timestamp())).count() as u64;
        prop_assert_eq!(g.total_weight(), inside);
        for e in g.edges() {
            prop_assert!(e.weight >= 1);
            prop_assert_ne!(e.rater, e.ratee);
        }
        prop_assert!(g.nodes().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn graph_ignores_record_order(
        (original, shuffled) in records().prop_flat_map(|r| (Just(r.clone()), Just(r).prop_shuffle())),
    ) {
        prop_assert_eq!(
            build_graph(&original, TimeWindow::unbounded()),
            build_graph(&shuffled, TimeWindow::unbounded())
        );
    }

    #[test]
    fn partitioned_windows_add_up(recs in records(), cuts in proptest::collection::btree_set(1u64..100, 0..5)) {
        let mut bounds: Vec<u64> = vec![0];
        bounds.extend(cuts);
        let mut total = 0;
        for pair in bounds.windows(2) {
            total += build_graph(&recs, TimeWindow::new(pair[0], Some(pair[1])).unwrap()).total_weight();
        }
        let last = *bounds.last().unwrap();
        total += build_graph(&recs, TimeWindow::new(last, None).unwrap()).total_weight();
        prop_assert_eq!(total, build_graph(&recs, TimeWindow::unbounded()).total_weight());
    }
}
