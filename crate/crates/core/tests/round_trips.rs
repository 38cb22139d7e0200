use rcpoly::corpus;
use rcpoly::encode::{EncodeConfig, Encoding, EncodingJob, Problem};
use rcpoly::nulla::{certificate_at_degree, verify_certificate, Certificate};
use rcpoly::{Graph, GraphKind, PolySystem};

#[test]
fn graphs_survive_dimacs_and_json() {
    for g in corpus::graphs_up_to(5) {
        let back = Graph::parse_dimacs(&g.to_dimacs()).unwrap();
        assert_eq!(back, g);
        let json = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(
            Graph::from_json(&serde_json::from_str(&json).unwrap()).unwrap(),
            g
        );
    }
}

#[test]
fn encodings_survive_json() {
    let cases = [
        (
            Problem::Vcolor,
            3,
            Graph::generate(GraphKind::Cycle, 5).unwrap(),
        ),
        (
            Problem::Stable,
            2,
            Graph::generate(GraphKind::Path, 4).unwrap(),
        ),
        (
            Problem::Rc2,
            2,
            Graph::generate(GraphKind::Wheel, 4).unwrap(),
        ),
        (
            Problem::Rck,
            3,
            Graph::generate(GraphKind::Cycle, 6).unwrap(),
        ),
    ];
    for (problem, k, g) in cases {
        let enc = EncodingJob::new(problem, k)
            .run(&g, &EncodeConfig::default())
            .unwrap();
        let text = serde_json::to_string(&enc).unwrap();
        let back: Encoding = serde_json::from_str(&text).unwrap();
        assert_eq!(back, enc);
        // a plain system reader ignores the encoding metadata
        let sys: PolySystem = serde_json::from_str(&text).unwrap();
        assert_eq!(sys, enc.system);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn certificates_survive_json() {
    let g = Graph::generate(GraphKind::Star, 4).unwrap();
    let sys = EncodingJob::new(Problem::Rc2, 2)
        .run(&g, &EncodeConfig::default())
        .unwrap()
        .system;
    let cert = certificate_at_degree(&sys, 0).unwrap().unwrap();
    let back: Certificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
    assert_eq!(back, cert);
    assert!(verify_certificate(&sys, &back).unwrap());
}
