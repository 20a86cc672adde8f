use std::path::PathBuf;

use nonclass_cli::spec::{parse_state_spec, parse_sweep_spec, to_json};
use nonclass_cli::CliError;
use proptest::prelude::*;

fn corpus(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let text = String::from_utf8_lossy(&std::fs::read(&p).unwrap()).into_owned();
            (p, text)
        })
        .collect();
    out.sort();
    out
}

#[test]
fn state_corpus_replays() {
    let seeds = corpus("parse_state_spec");
    assert!(seeds.len() >= 5);
    let mut accepted = 0;
    for (path, text) in seeds {
        match parse_state_spec(&text) {
            Ok(s) => {
                accepted += 1;
                assert_eq!(parse_state_spec(&to_json(&s)).unwrap(), s, "{}", path.display());
            }
            Err(e) => assert!(matches!(e, CliError::Parse(_)), "{}", path.display()),
        }
    }
    assert!(accepted >= 5);
}

#[test]
fn sweep_corpus_replays() {
    let mut accepted = 0;
    for (path, text) in corpus("parse_sweep_spec") {
        match parse_sweep_spec(&text) {
            Ok(s) => {
                accepted += 1;
                assert_eq!(parse_sweep_spec(&to_json(&s)).unwrap(), s, "{}", path.display());
            }
            Err(e) => assert!(matches!(e, CliError::Parse(_)), "{}", path.display()),
        }
    }
    assert!(accepted >= 3);
}

proptest! {
    #[test]
    fn arbitrary_text_never_panics(s in "\\PC{0,200}") {
        let _ = parse_state_spec(&s);
        let _ = parse_sweep_spec(&s);
    }

    #[test]
    fn mutated_seed_never_panics(
        pos in 0usize..80,
        ch in prop::char::any(),
    ) {
        let seed = r#"{"family":"squeezed_thermal","param":"a","min":0,"max":1,"steps":51,"params":{"beta":1}}"#;
        let mut chars: Vec<char> = seed.chars().collect();
        let i = pos % chars.len();
        chars[i] = ch;
        let text: String = chars.into_iter().collect();
        let _ = parse_sweep_spec(&text);
        let _ = parse_state_spec(&text);
    }
}
