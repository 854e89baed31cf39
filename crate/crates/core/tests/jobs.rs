use chromplane::coloring::Verdict;
use chromplane::job::{run_chi_check, Artifact, Instance, Job, FORMAT_VERSION};
use chromplane::render::Scene;
use chromplane::Error;

fn job(text: &str) -> Job {
    Job::from_json(text).unwrap()
}

#[test]
fn bicycle_certificates_round_trip_and_recheck() {
    for (k, expect) in [(3, Verdict::Unsat), (4, Verdict::Sat)] {
        let j =
            job(&format!(r#"{{"version":1,"generator":{{"kind":"bicycle","s":1.5,"count":300}},"eps":0.05,"k":{k}}}"#));
        let cert = run_chi_check(&j, Some(0)).unwrap();
        assert_eq!(cert.certificate.verdict, expect);
        assert_eq!(cert.vertices, 600);
        if expect == Verdict::Unsat {
            assert_eq!(cert.strict.as_ref().unwrap().verdict, Verdict::Unsat);
        } else {
            assert!(cert.strict.is_none() && cert.certificate.verified);
        }
        let text = Artifact::ChiCertificate(cert.clone()).to_json();
        let Artifact::ChiCertificate(back) = Artifact::from_json(&text).unwrap() else { panic!() };
        assert_eq!(back, cert);
        assert_eq!(back.recheck(Some(5)).unwrap(), expect);
    }
}

#[test]
fn tampered_coloring_fails_recheck() {
    let j = job(r#"{"version":1,"generator":{"kind":"circle","count":120},"eps":0.05,"k":3}"#);
    let mut cert = run_chi_check(&j, None).unwrap();
    assert_eq!(cert.certificate.verdict, Verdict::Sat);
    let colors = cert.certificate.coloring.as_mut().unwrap();
    colors.iter_mut().for_each(|c| *c = 1);
    assert_eq!(cert.recheck(None).unwrap(), Verdict::Indeterminate);
}

#[test]
fn hex_jobs_use_the_shrunk_interval() {
    let j =
        job(r#"{"version":1,"generator":{"kind":"hex","scale":0.05,"rings":6,"h":0.05},"interval":[0.8,1.2],"k":7}"#);
    let Instance::Tiles { graph, .. } = j.build().unwrap() else { panic!() };
    assert!((graph.interval.lo() - 0.9).abs() < 1e-12 && (graph.interval.hi() - 1.1).abs() < 1e-12);
    let cert = run_chi_check(&j, None).unwrap();
    assert_eq!(cert.vertices, 1 + 3 * 6 * 7);
    assert!(cert.provenance.contains("shrunk=[0.9"));
}

#[test]
fn schema_errors_are_config_errors() {
    let cases = [
        r#"{"version":2,"generator":{"kind":"circle","count":12},"eps":0.05,"k":3}"#,
        r#"{"version":1,"generator":{"kind":"circle","count":12},"k":3}"#,
        r#"{"version":1,"generator":{"kind":"circle","count":12},"eps":0.05,"interval":[0.9,1.1],"k":3}"#,
        r#"{"version":1,"generator":{"kind":"spiral","count":12},"eps":0.05,"k":3}"#,
        r#"{"version":1,"generator":{"kind":"circle","count":12},"eps":1.5,"k":3}"#,
        r#"{"version":1,"generator":{"kind":"circle","count":12},"eps":0.05,"k":3,"extra":true}"#,
        r#"{"version":1,"generator":{"kind":"circle","count":12},"eps":0.05,"k":0}"#,
        "not json",
    ];
    for text in cases {
        match Job::from_json(text) {
            Err(Error::Config(_)) | Err(Error::Json(_)) => {}
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn every_artifact_renders() {
    let j = job(
        r#"{"version":1,"generator":{"kind":"points","points":[[0,0],[1,0],[0.5,0.8660254037844386]]},"eps":0.01,"k":3}"#,
    );
    let cert = run_chi_check(&j, None).unwrap();
    let svg = Scene::from_artifact(&Artifact::ChiCertificate(cert)).unwrap().to_svg();
    assert_eq!(svg.matches("<circle").count(), 3);
    assert_eq!(svg.matches("<line").count(), 3);
    assert_eq!(svg, Scene::from_artifact(&Artifact::from_json(&svg_source()).unwrap()).unwrap().to_svg());
    let bad = r#"{"kind":"hex_tiling","version":9,"tiling":{"scale":1,"rings":0,"tiles":[]}}"#;
    assert!(Artifact::from_json(bad).is_err());
    assert_eq!(FORMAT_VERSION, 1);
}

fn svg_source() -> String {
    let j = job(
        r#"{"version":1,"generator":{"kind":"points","points":[[0,0],[1,0],[0.5,0.8660254037844386]]},"eps":0.01,"k":3}"#,
    );
    Artifact::ChiCertificate(run_chi_check(&j, None).unwrap()).to_json()
}
