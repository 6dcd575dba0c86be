use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::Duration;

use cmfield::classifier::{FieldType, Signature};
use cmfield::lmfdb::*;
use cmfield::numfield::CubicSubfield;
use num_bigint::BigInt;

/// Serves `respond(request_index, request_target)` over plain HTTP until dropped.
struct Server {
    base: String,
    hits: Arc<AtomicUsize>,
    targets: Arc<Mutex<Vec<String>>>,
}

impl Server {
    fn start<F>(respond: F) -> Server
    where
        F: Fn(usize, &str) -> (u16, String) + Send + 'static,
    {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let base = format!("http://{}", listener.local_addr().unwrap());
        let hits = Arc::new(AtomicUsize::new(0));
        let targets = Arc::new(Mutex::new(Vec::new()));
        let (h, t) = (hits.clone(), targets.clone());
        thread::spawn(move || {
            for stream in listener.incoming() {
                let Ok(mut stream) = stream else { break };
                let mut reader = BufReader::new(stream.try_clone().unwrap());
                let mut request_line = String::new();
                reader.read_line(&mut request_line).unwrap();
                loop {
                    let mut line = String::new();
                    if reader.read_line(&mut line).unwrap() == 0 || line == "\r\n" {
                        break;
                    }
                }
                let target = request_line.split_whitespace().nth(1).unwrap_or("").to_string();
                let i = h.fetch_add(1, Ordering::SeqCst);
                t.lock().unwrap().push(target.clone());
                let (status, body) = respond(i, &target);
                let reason = if status == 200 { "OK" } else { "Error" };
                let _ = write!(
                    stream,
                    "HTTP/1.1 {status} {reason}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                    body.len()
                );
            }
        });
        Server { base, hits, targets }
    }

    fn hits(&self) -> usize {
        self.hits.load(Ordering::SeqCst)
    }
}

fn payload(records: &[LmfdbRecord]) -> String {
    serde_json::json!({ "data": records }).to_string()
}

fn client(base: &str, dir: &std::path::Path, online: bool) -> Client {
    let mut c = Client::new(base, Cache::new(dir), online);
    c.backoff = Duration::from_millis(1);
    c.timeout = Duration::from_secs(5);
    c
}

fn named(label: &str) -> LmfdbRecord {
    fixtures::named().into_iter().find(|r| r.label == label).unwrap()
}

#[test]
fn query_urls_encode_filters() {
    let base = "https://example.org";
    let mut q = QuerySpec::totally_imaginary(6);
    q.galois_label = Some("6T3".parse().unwrap());
    let url = build_query_with_base(base, &q).unwrap();
    assert!(url.starts_with("https://example.org/api/nf_fields/?_format=json"));
    for part in ["degree=i6", "r2=i3", "galois_label=6T3", "_limit=100", "_offset=0"] {
        assert!(url.contains(part), "{url} lacks {part}");
    }
    assert_eq!(build_query_with_base(base, &q).unwrap(), url);

    let mut q = QuerySpec::new(4);
    q.cm = Some(true);
    q.max_abs_disc = Some(5000);
    let url = build_query_with_base(base, &q).unwrap();
    assert!(url.contains("cm=true"));
    assert!(url.contains("disc_abs=py%7B%22%24lte%22%3A5000%7D"), "{url}");

    let url = label_query_with_base(base, "6.0.14283.1").unwrap();
    assert_eq!(url, "https://example.org/api/nf_fields/?_format=json&label=6.0.14283.1");
}

#[test]
fn query_errors() {
    let base = "https://example.org";
    let mut q = QuerySpec::new(6);
    q.page_size = 0;
    assert!(build_query_with_base(base, &q).is_err());
    q.page_size = MAX_PAGE_SIZE + 1;
    assert!(build_query_with_base(base, &q).is_err());
    let mut q = QuerySpec::new(6);
    q.signature = Some(Signature::new(0, 2));
    assert!(build_query_with_base(base, &q).is_err());
    let mut q = QuerySpec::new(6);
    q.galois_label = Some("4T5".parse().unwrap());
    assert!(build_query_with_base(base, &q).is_err());
    let mut q = QuerySpec::new(3);
    q.cm = Some(true);
    assert!(build_query_with_base(base, &q).is_err());
    assert!(label_query_with_base(base, "6.0.14283").is_err());
    assert!(label_query_with_base(base, "6.0.x.1").is_err());
}

#[test]
fn fixture_payload_parses() {
    let r = named("6.0.309123.1");
    assert!(r.is_cm);
    assert_eq!(r.degree, 6);
    assert_eq!(r.r2, 3);
    assert_eq!(r.galois_label, "6T3");
    assert_eq!(r.abs_disc, BigInt::from(309123));
    assert!(!named("6.0.14283.1").is_cm);
}

#[test]
fn parse_edge_cases() {
    assert!(parse_records(br#"{"data": []}"#).unwrap().records.is_empty());
    assert!(matches!(parse_records(br#"{"data": [{"label": "4.0.2"#), Err(LmfdbError::Malformed(_))));
    assert!(parse_records(b"[]").is_err());

    // Unknown fields are ignored, discriminants may be strings, subfields may be strings.
    let text = r#"{"data": [
        {"label":"4.0.229.1","coeffs":[1,-1,0,0,1],"degree":4,"r2":2,"galois_label":"4T5","cm":false,
         "disc_abs":"229","class_number":1,"subfields":[]},
        {"label":"4.0.125.1","coeffs":[1,-1,1,-1,1],"degree":4,"r2":2,"galois_label":"4T1","cm":true,
         "disc_abs":125,"subfields":["-1,-1,1"]},
        {"label":"4.0.230.1","coeffs":[1,-1,0,0,1],"degree":4,"r2":2,"galois_label":"4T5","cm":false,"disc_abs":229},
        {"label":"4.2.229.1","coeffs":[1,-1,0,0,1],"degree":4,"r2":2,"galois_label":"4T5","cm":false,"disc_abs":229},
        {"label":"4.0.229.1","coeffs":[1,-1,0,1],"degree":4,"r2":2,"galois_label":"4T5","cm":false,"disc_abs":229},
        {"label":"4.0.229.1","coeffs":[1,-1,0,0,1],"degree":4,"r2":2,"galois_label":"6T5","cm":false,"disc_abs":229},
        {"label":"4.0.229.1","degree":4}
    ]}"#;
    let out = parse_records(text.as_bytes()).unwrap();
    assert_eq!(out.records.len(), 2);
    assert_eq!(out.skipped.len(), 5);
    assert_eq!(out.records[1].subfields, Some(vec![vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]]));
}

#[test]
fn records_round_trip() {
    let all: Vec<LmfdbRecord> =
        fixtures::named().into_iter().chain(fixtures::sextics()).chain(fixtures::quartics()).collect();
    let again = parse_records(payload(&all).as_bytes()).unwrap();
    assert!(again.skipped.is_empty());
    assert_eq!(again.records, all);
    for r in all.iter().take(20) {
        let line = serde_json::to_string(r).unwrap();
        assert_eq!(parse_jsonl(&line).unwrap(), vec![r.clone()]);
    }
}

#[test]
fn fixture_corpus_shape() {
    let labels: Vec<String> = fixtures::named().into_iter().map(|r| r.label).collect();
    assert_eq!(labels, ["4.0.229.1", "6.0.14283.1", "6.0.29095.1", "6.0.309123.1"]);
    let sextics = fixtures::sextics();
    for label in ["6T1", "6T2", "6T3", "6T5", "6T6", "6T8", "6T9", "6T11", "6T13", "6T14", "6T16"] {
        assert!(sextics.iter().filter(|r| r.galois_label == label).count() >= 50, "{label}");
    }
    assert!(sextics.iter().all(|r| r.r1() == 0));
    assert!(fixtures::quartics().iter().all(|r| r.r1() == 0 && r.abs_disc <= BigInt::from(fixtures::QUARTIC_XMAX)));
    assert!(fixtures::by_label("6.0.9747.1").is_some());
    assert!(fixtures::by_label("9.9.9.9").is_none());
}

#[test]
fn cache_is_content_addressed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let url = "https://example.org/api/nf_fields/?label=4.0.229.1";
    assert_eq!(cache.get(url).unwrap(), None);
    let recs = vec![named("4.0.229.1")];
    let path = cache.put(url, &recs).unwrap();
    assert_eq!(path.file_name().unwrap().to_str().unwrap().len(), 64 + ".jsonl".len());
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(bytes.iter().filter(|&&b| b == b'\n').count(), 1);
    assert_eq!(cache.get(url).unwrap(), Some(recs.clone()));
    cache.put(url, &recs).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), bytes);
    assert_ne!(cache.path_for(url), cache.path_for(&format!("{url}&x=1")));
}

#[test]
fn online_fetch_fills_the_cache_and_offline_reuses_it() {
    let body = payload(&[named("6.0.14283.1")]);
    let server = Server::start(move |_, _| (200, body.clone()));
    let dir = tempfile::tempdir().unwrap();
    let online = client(&server.base, dir.path(), true);
    let first = online.fetch_label("6.0.14283.1").unwrap();
    assert!(!first.from_cache);
    assert_eq!(first.records, vec![named("6.0.14283.1")]);
    assert_eq!(server.hits(), 1);
    assert_eq!(server.targets.lock().unwrap()[0], "/api/nf_fields/?_format=json&label=6.0.14283.1");

    let cached_bytes = std::fs::read(online.cache.path_for(&first.url)).unwrap();
    let second = online.fetch_label("6.0.14283.1").unwrap();
    assert!(second.from_cache);
    assert_eq!(server.hits(), 1);
    let offline = client(&server.base, dir.path(), false);
    let third = offline.fetch_label("6.0.14283.1").unwrap();
    assert_eq!(third.records, first.records);
    assert_eq!(std::fs::read(online.cache.path_for(&first.url)).unwrap(), cached_bytes);
}

#[test]
fn offline_miss_never_touches_the_network() {
    let server = Server::start(|_, _| (200, r#"{"data": []}"#.to_string()));
    let dir = tempfile::tempdir().unwrap();
    let offline = client(&server.base, dir.path(), false);
    assert!(matches!(offline.fetch_label("4.0.229.1"), Err(LmfdbError::Offline(_))));
    assert_eq!(server.hits(), 0);
}

#[test]
fn transient_failures_are_retried() {
    let body = payload(&[named("4.0.229.1")]);
    let server = Server::start(move |i, _| if i < 2 { (503, "busy".into()) } else { (200, body.clone()) });
    let dir = tempfile::tempdir().unwrap();
    let out = client(&server.base, dir.path(), true).fetch_label("4.0.229.1").unwrap();
    assert_eq!(out.records.len(), 1);
    assert_eq!(server.hits(), 3);
}

#[test]
fn persistent_failures_give_up_after_three_retries() {
    let server = Server::start(|_, _| (500, "down".into()));
    let dir = tempfile::tempdir().unwrap();
    let err = client(&server.base, dir.path(), true).fetch_label("4.0.229.1").unwrap_err();
    assert!(matches!(err, LmfdbError::Network(_)));
    assert_eq!(server.hits(), 1 + RETRIES as usize);
    assert!(Cache::new(dir.path()).get(&label_query_with_base(&server.base, "4.0.229.1").unwrap()).unwrap().is_none());
}

#[test]
fn paging_stops_at_a_short_page() {
    let quartics = fixtures::quartics();
    let server = Server::start(move |_, target| {
        let offset: usize = target.split("_offset=").nth(1).unwrap().parse().unwrap();
        let page: Vec<LmfdbRecord> =
            quartics.iter().skip(offset).take(if offset < 20 { 10 } else { 3 }).cloned().collect();
        (200, payload(&page))
    });
    let dir = tempfile::tempdir().unwrap();
    let mut q = QuerySpec::totally_imaginary(4);
    q.page_size = 10;
    let pages = client(&server.base, dir.path(), true).fetch_all(&q, 10).unwrap();
    assert_eq!(pages.iter().map(|p| p.records.len()).collect::<Vec<_>>(), vec![10, 10, 3]);
    assert_eq!(server.hits(), 3);
}

#[test]
fn named_fields_cross_validate() {
    let report = cross_validate(&fixtures::named());
    assert!(report.all_agree(), "{:?}", report.failures().collect::<Vec<_>>());
    let by = |l: &str| report.entries.iter().find(|e| e.label == l).unwrap();
    assert_eq!(by("6.0.14283.1").category_observed, Some(FieldType::CmTypeNotCm));
    assert_eq!(by("6.0.14283.1").cubic_observed, Some(CubicSubfield::Mixed));
    assert_eq!(by("6.0.309123.1").category_observed, Some(FieldType::CmField));
    assert_eq!(by("6.0.29095.1").category_observed, Some(FieldType::TrType));
    assert_eq!(by("6.0.29095.1").galois_observed.as_deref(), Some("6T11"));
    assert_eq!(by("4.0.229.1").category_observed, Some(FieldType::TrType));
    assert_eq!(by("4.0.229.1").galois_observed.as_deref(), Some("4T5"));
    // These rows were computed offline, not captured from the database.
    assert!(!report.database_backed);
}

#[test]
fn mismatches_and_failures_are_reported() {
    let mut wrong = named("6.0.309123.1");
    wrong.is_cm = false;
    wrong.galois_label = "6T5".into();
    let mut reducible = named("4.0.229.1");
    reducible.coefficients = vec![1, 0, 2, 0, 1].into_iter().map(BigInt::from).collect();
    let report = cross_validate(&[wrong, reducible, named("4.0.229.1")]);
    assert_eq!(report.agreements(), 1);
    let e = &report.entries[0];
    assert!(e.mismatches.iter().any(|m| m.contains("Galois")));
    assert!(e.mismatches.iter().any(|m| m.contains("cm = false")));
    assert!(report.entries[1].error.is_some());
    assert_eq!(report.per_label["6T5"].disagree, 1);
    assert_eq!(report.per_label["4T5"], LabelSummary { total: 2, agree: 1, disagree: 0, errors: 1 });
}
