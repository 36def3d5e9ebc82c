use std::path::PathBuf;

use fls::fixtures;
use fls::io::{parse_space, serialize_space};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Run with `UPDATE_FIXTURES=1` to rewrite the shipped corpus.
#[test]
fn corpus_files_match_constructors() {
    let update = std::env::var_os("UPDATE_FIXTURES").is_some();
    for (stem, space) in fixtures::corpus() {
        let path = fixture_dir().join(format!("{stem}.json"));
        if update {
            std::fs::write(&path, serialize_space(&space)).unwrap();
        }
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(parse_space(text.as_bytes()).unwrap(), space, "{stem}");
        assert_eq!(serialize_space(&space), text, "{stem} is not in canonical layout");
    }
}

#[test]
fn corpus_has_no_strays() {
    let mut expected: Vec<String> = fixtures::corpus()
        .into_iter()
        .map(|(stem, _)| format!("{stem}.json"))
        .collect();
    expected.sort();
    let mut found: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    found.sort();
    assert_eq!(found, expected);
}
