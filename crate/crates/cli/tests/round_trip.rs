use hochschild::quiver::{Path, Quiver};
use hochschild_cli::{parse, serialize};
use proptest::prelude::*;

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_>.-]{0,5}"
}

fn distinct_names(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<String>> {
    prop::collection::btree_set(name(), n).prop_map(|s| s.into_iter().collect())
}

#[derive(Debug, Clone)]
enum Scheme {
    None,
    Truncate(usize),
    Monomial(Vec<usize>),
}

fn quiver_doc() -> impl Strategy<Value = String> {
    (distinct_names(1..=4), distinct_names(0..=5))
        .prop_flat_map(|(vs, arrs)| {
            let n = vs.len();
            let ends = prop::collection::vec((0..n, 0..n), arrs.len());
            let scheme = prop_oneof![
                Just(Scheme::None),
                (2usize..5).prop_map(Scheme::Truncate),
                prop::collection::vec(any::<usize>(), 0..4).prop_map(Scheme::Monomial),
            ];
            (Just(vs), Just(arrs), ends, scheme, name())
        })
        .prop_map(|(vs, arrs, ends, scheme, doc_name)| {
            let mut text = format!("quiver {doc_name}\n");
            for v in &vs {
                text += &format!("vertex {v}\n");
            }
            for (a, (s, t)) in arrs.iter().zip(&ends) {
                text += &format!("arrow {a} {} {}\n", vs[*s], vs[*t]);
            }
            match scheme {
                Scheme::None => {}
                Scheme::Truncate(m) => text += &format!("relation truncate {m}\n"),
                Scheme::Monomial(picks) => {
                    let q = Quiver::new(
                        vs.iter().map(String::as_str),
                        arrs.iter().zip(&ends).map(|(a, (s, t))| (a.as_str(), vs[*s].as_str(), vs[*t].as_str())),
                    )
                    .unwrap();
                    let long: Vec<Path> = q
                        .enumerate_paths(Some(3))
                        .unwrap()
                        .into_iter()
                        .filter(|p| p.len() >= 2)
                        .collect();
                    let mut chosen: Vec<Path> = Vec::new();
                    if !long.is_empty() {
                        let mut picked: Vec<Path> = picks.iter().map(|i| long[i % long.len()].clone()).collect();
                        picked.sort_by_key(Path::len);
                        picked.dedup();
                        for p in picked {
                            if !chosen.iter().any(|g| p.contains(g)) {
                                chosen.push(p);
                            }
                        }
                    }
                    for p in chosen {
                        let names: Vec<&str> = p.arrows().iter().map(|&a| q.arrows()[a].name.as_str()).collect();
                        text += &format!("relation monomial {}\n", names.join(" "));
                    }
                }
            }
            text + "end\n"
        })
}

fn poset_doc() -> impl Strategy<Value = String> {
    distinct_names(1..=6)
        .prop_flat_map(|es| {
            let n = es.len();
            (Just(es), prop::collection::vec((0..n, 0..n), 0..8), name())
        })
        .prop_map(|(es, pairs, doc_name)| {
            let mut text = format!("poset {doc_name}\n");
            for e in &es {
                text += &format!("element {e}\n");
            }
            for (i, j) in pairs {
                // lower index below higher index keeps the relation acyclic
                if i < j {
                    text += &format!("relation {} <= {}\n", es[i], es[j]);
                } else if i > j {
                    text += &format!("covers {} {}\n", es[i], es[j]);
                }
            }
            text + "end\n"
        })
}

proptest! {
    #[test]
    fn quiver_documents_round_trip(text in quiver_doc()) {
        let doc = parse(&text).unwrap();
        let once = serialize(&doc);
        let again = parse(&once).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(serialize(&again), once);
    }

    #[test]
    fn poset_documents_round_trip(text in poset_doc()) {
        let doc = parse(&text).unwrap();
        let once = serialize(&doc);
        let again = parse(&once).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(serialize(&again), once);
    }

    #[test]
    fn comments_and_spacing_are_ignored(text in quiver_doc()) {
        let noisy: String = text
            .lines()
            .map(|l| format!("  {}\t# note\n\n", l.replace(' ', "   ")))
            .collect();
        prop_assert_eq!(parse(&noisy).unwrap(), parse(&text).unwrap());
    }
}
