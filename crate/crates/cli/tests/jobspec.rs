use plnr_cli::{Command, JobSpec};
use proptest::prelude::*;

const COMMANDS: [Command; 16] = [
    Command::PlanarVerify,
    Command::PlanarSearch,
    Command::SemifieldBuild,
    Command::SemifieldCheck,
    Command::RdsBuild,
    Command::RdsVerify,
    Command::RdsProject,
    Command::DesignBuild,
    Command::DesignVerify,
    Command::PlaneBuild,
    Command::PlaneVerify,
    Command::Negabent,
    Command::Bent,
    Command::Kantor,
    Command::Spread,
    Command::Fixtures,
];

fn text() -> impl Strategy<Value = Option<String>> {
    prop::option::of("[ -~]{0,12}")
}

prop_compose! {
    fn job()(
        command in prop::option::of(prop::sample::select(COMMANDS.to_vec())),
        strings in prop::collection::vec(text(), 13),
        arity in prop::option::of(0u32..30),
        functional in prop::option::of(any::<u32>()),
        identity in prop::option::of(any::<u32>()),
        restrict in any::<bool>(),
        threads in prop::option::of(1usize..64),
        seed in prop::option::of(any::<u64>()),
    ) -> JobSpec {
        let mut s = strings.into_iter();
        let mut next = || s.next().unwrap();
        JobSpec {
            command,
            field: next(),
            function: next(),
            arity,
            group: next(),
            forbidden: next(),
            set: next(),
            project: next(),
            functional,
            range: next(),
            convention: next(),
            restrict,
            source: next(),
            identity,
            chain: next(),
            zetas: next(),
            input: next(),
            output: next(),
            threads,
            seed,
        }
    }
}

proptest! {
    #[test]
    fn every_job_spec_round_trips(job in job()) {
        let text = serde_json::to_string(&job).unwrap();
        prop_assert_eq!(serde_json::from_str::<JobSpec>(&text).unwrap(), job);
    }
}

#[test]
fn command_names_match_serialization() {
    for c in COMMANDS {
        assert_eq!(serde_json::to_value(c).unwrap(), c.name());
    }
}
