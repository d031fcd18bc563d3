use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use intertype::encoder::configuration_family;
use intertype::machines::catalog::{ssts_pairs, tm1};
use intertype::machines::parse_tm;
use intertype::pipeline::{verify_ssts, verify_tm};
use intertype::random::random_tm;
use intertype::witness::synthesize_tm;
use intertype::{
    check, encode_tau_star_tm, enumerate_inhabitants, inhabit, inhabit_multi, Context, SearchConfig,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

const BOUNCE: &str = "symbols: _ a
states: q0 q1 q2 qf
initial: q0
final: qf
delta: q0 _ -> q1 a R
delta: q0 a -> q0 a R
delta: q1 _ -> q2 _ L
delta: q1 a -> q1 a R
delta: q2 _ -> q2 _ L
delta: q2 a -> qf a R
";

fn encode(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(11);
    let machines: Vec<_> = (0..16).map(|_| random_tm(&mut rng, 5, 3)).collect();
    c.bench_function("encode_tau_star/16_random_machines", |b| {
        b.iter(|| {
            for tm in &machines {
                black_box(encode_tau_star_tm(tm).unwrap());
            }
        })
    });
}

fn check_witness(c: &mut Criterion) {
    let tm = parse_tm(BOUNCE).unwrap();
    let tau = encode_tau_star_tm(&tm).unwrap().tau_star;
    let mut group = c.benchmark_group("check_tau_star_witness");
    for width in [3usize, 6, 12] {
        let w = synthesize_tm(&tm, width).unwrap().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(width), &w.term, |b, m| {
            b.iter(|| assert!(check(&Context::new(), m, &tau).unwrap()))
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let tau = encode_tau_star_tm(&tm1()).unwrap().tau_star;
    c.bench_function("inhabit/tm1_tau_star", |b| {
        b.iter(|| inhabit(&tau, SearchConfig::depth(9)).unwrap())
    });
    let tm = parse_tm(BOUNCE).unwrap();
    let bundle = encode_tau_star_tm(&tm).unwrap();
    let family = configuration_family(&bundle, &tm.blank_config(4), false).unwrap();
    c.bench_function("inhabit_multi/bounce_width_4", |b| {
        b.iter(|| inhabit_multi(&family, SearchConfig::depth(4)).unwrap())
    });
    let goal = "(a -> b) & (b -> a) -> a -> a".parse().unwrap();
    let js = [intertype::Judgment::new(Context::new(), goal)];
    c.bench_function("enumerate_inhabitants/size_7", |b| {
        b.iter(|| enumerate_inhabitants(&js, 7))
    });
}

fn verify(c: &mut Criterion) {
    let tm = parse_tm(BOUNCE).unwrap();
    c.bench_function("verify/bounce", |b| {
        b.iter(|| verify_tm(&tm, 6, None).unwrap())
    });
    c.bench_function("verify/ssts_pairs", |b| {
        b.iter(|| verify_ssts(&ssts_pairs(), 8, None).unwrap())
    });
}

criterion_group!(benches, encode, check_witness, search, verify);
criterion_main!(benches);
