use ghz_qsdc::harness::{run_experiment, RunConfig, TrentMode};
use ghz_qsdc::protocol::{EncodingVariant, ErrorCorrection, ProtocolId};

fn attacked(protocol: ProtocolId, variant: EncodingVariant, bits: usize, seed: u64) -> RunConfig {
    RunConfig {
        protocol,
        variant,
        trent: TrentMode::Attack,
        message_length: bits,
        seed,
        ..RunConfig::default()
    }
}

#[test]
fn report_is_independent_of_thread_count() {
    let config = RunConfig {
        rounds_repeat: 4,
        ..attacked(ProtocolId::Protocol2, EncodingVariant::Revised, 300, 77)
    };
    let with = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| run_experiment(&config).unwrap().to_json().unwrap())
    };
    let one = with(1);
    assert_eq!(one, with(3));
    assert_eq!(one, with(8));
}

#[test]
fn different_seeds_differ() {
    let a = run_experiment(&attacked(ProtocolId::Protocol1, EncodingVariant::Original, 200, 1)).unwrap();
    let b = run_experiment(&attacked(ProtocolId::Protocol1, EncodingVariant::Original, 200, 2)).unwrap();
    assert_ne!(a.to_json().unwrap(), b.to_json().unwrap());
}

#[test]
fn sampled_rates_within_four_sigma_of_exact_values() {
    // Exact values from the enumeration oracle: Bob's attacked error rate and
    // Trent's guess accuracy on the revised encoding are both 1/2.
    let exact = 0.5;
    let mut inside = 0;
    for seed in 0..100 {
        let r = run_experiment(&attacked(ProtocolId::Protocol1, EncodingVariant::Revised, 500, seed)).unwrap();
        let err = r.bob_error_rate;
        let guess = r.trent_guess_accuracy.unwrap();
        let sigma = |n: u64| (exact * (1.0 - exact) / n as f64).sqrt();
        if (err.value - exact).abs() <= 4.0 * sigma(err.trials)
            && (guess.value - exact).abs() <= 4.0 * sigma(guess.trials)
        {
            inside += 1;
        }
    }
    assert!(inside >= 99, "{inside}/100 repetitions within 4 sigma");
}

#[test]
fn repetition_code_delivers_message_in_honest_runs() {
    let config = RunConfig {
        ecc: ErrorCorrection::Repetition3,
        message_length: 100,
        rounds_repeat: 3,
        ..RunConfig::default()
    };
    let r = run_experiment(&config).unwrap();
    assert_eq!(r.total_rounds, 3 * 600);
    assert_eq!(r.message_recovery_fraction, Some(1.0));
}

#[test]
fn histogram_covers_every_round() {
    let r = run_experiment(&RunConfig {
        rounds_repeat: 2,
        ..attacked(ProtocolId::Protocol2, EncodingVariant::Original, 250, 4)
    })
    .unwrap();
    assert_eq!(r.histogram.values().sum::<u64>(), r.total_rounds);
    assert!(r.violations().is_empty());
}
