use std::collections::BTreeSet;
use std::path::Path;

use rvlogic::corpus::hajek_corpus;
use rvlogic::decide::check_query;
use rvlogic::solver::SolverConfig;
use rvlogic::theory::parse_theory;

fn dir(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

#[test]
fn tautology_fixtures_match_the_corpus() {
    let corpus = hajek_corpus();
    let on_disk: BTreeSet<String> = std::fs::read_dir(dir("hajek"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    let expected: BTreeSet<String> = corpus.iter().map(|c| format!("{}.rvl", c.name())).collect();
    assert_eq!(on_disk, expected);
    for case in &corpus {
        let text = std::fs::read_to_string(dir("hajek").join(format!("{}.rvl", case.name()))).unwrap();
        assert_eq!(text, case.to_file(), "{}", case.name());
        let file = parse_theory(&text).unwrap();
        let query = file.query.unwrap();
        assert_eq!(query.components.len(), 1);
        assert_eq!(query.components[0].formula, case.formula);
    }
}

#[test]
fn demo_fixtures_parse_and_decide() {
    for entry in std::fs::read_dir(dir("demo")).unwrap() {
        let path = entry.unwrap().path();
        let file = parse_theory(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let decisions = check_query(&file.theory, file.query.as_ref().unwrap(), &SolverConfig::default()).unwrap();
        let refuted = path.file_stem().unwrap().to_str().unwrap().ends_with("_refuted");
        assert_eq!(decisions.iter().any(|d| d.found_model()), refuted, "{}", path.display());
    }
}
