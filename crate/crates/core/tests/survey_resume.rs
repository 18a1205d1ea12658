use std::path::PathBuf;

use hrp_core::survey::{run_survey, Checkpoint, SurveyOptions, SurveyParams};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hrp-core-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join("survey.json")
}

#[test]
fn resumed_survey_matches_fresh_run() {
    let params = SurveyParams::new(6, 2, 50).unwrap();
    let fresh = run_survey(&params, &SurveyOptions::default()).unwrap();
    assert!(fresh.complete);

    let path = scratch("resume");
    let _ = std::fs::remove_file(&path);
    let partial = SurveyOptions {
        jobs: Some(1),
        checkpoint: Some(path.clone()),
        max_windows: Some(2),
    };
    let first = run_survey(&params, &partial).unwrap();
    assert!(!first.complete);
    let cp = Checkpoint::load(&path).unwrap();
    assert_eq!(cp.cursor, 2 * 2048 * 64);
    assert_eq!(cp.row, first.row);

    let rest = SurveyOptions {
        max_windows: None,
        ..partial
    };
    let resumed = run_survey(&params, &rest).unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.row, fresh.row);
    assert_eq!(resumed.dep_cases, fresh.dep_cases);
    assert!(resumed.unpaired.is_empty() && resumed.violations.is_empty());

    let again = run_survey(&params, &rest).unwrap();
    assert_eq!(again.row, fresh.row);
    std::fs::remove_dir_all(path.parent().unwrap()).unwrap();
}

#[test]
fn checkpoint_for_other_cell_is_rejected() {
    let path = scratch("mismatch");
    let _ = std::fs::remove_file(&path);
    let opts = SurveyOptions {
        jobs: Some(1),
        checkpoint: Some(path.clone()),
        max_windows: None,
    };
    run_survey(&SurveyParams::new(4, 2, 3).unwrap(), &opts).unwrap();
    assert!(run_survey(&SurveyParams::new(4, 3, 3).unwrap(), &opts).is_err());
    std::fs::remove_dir_all(path.parent().unwrap()).unwrap();
}

#[test]
fn sequential_and_parallel_agree() {
    let params = SurveyParams::new(8, 2, 4).unwrap();
    let seq = run_survey(
        &params,
        &SurveyOptions {
            jobs: Some(1),
            ..Default::default()
        },
    )
    .unwrap();
    let par = run_survey(
        &params,
        &SurveyOptions {
            jobs: Some(3),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(seq.row, par.row);
    assert_eq!(seq.dep_cases, par.dep_cases);
}
