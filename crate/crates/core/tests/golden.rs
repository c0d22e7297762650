//! Golden files under `testdata/`. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use split_species::asymptotics::{thresholds, Thresholds};
use split_species::enumeration::{class_census, Census};

fn testdata(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../testdata")
        .join(name)
}

fn updating() -> bool {
    std::env::var_os("UPDATE_GOLDEN").is_some()
}

fn check_or_write(name: &str, actual: String) -> String {
    let path = testdata(name);
    if updating() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &actual).unwrap();
    }
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn census_matches_golden_files() {
    for n in 0..=7 {
        let census = class_census(n).unwrap();
        let name = format!("census-n{n}.json");
        let text = check_or_write(&name, serde_json::to_string_pretty(&census).unwrap() + "\n");
        let golden: Census = serde_json::from_str(&text).unwrap();
        assert_eq!(census, golden, "{name}");
        assert!(census.identity_violations().is_empty());
    }
}

#[test]
fn thresholds_match_golden_file() {
    let actual = thresholds(500, 200).unwrap();
    let text = check_or_write(
        "thresholds.json",
        serde_json::to_string_pretty(&actual).unwrap() + "\n",
    );
    let golden: Thresholds = serde_json::from_str(&text).unwrap();
    assert_eq!(actual, golden);
}
