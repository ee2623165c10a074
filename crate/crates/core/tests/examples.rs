macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(parse_and_validate, "parse_and_validate.rs");
example!(reductions, "reductions.rs");
example!(min_and_dominant, "min_and_dominant.rs");
example!(popular_edge_query, "popular_edge_query.rs");
example!(leveling_certificates, "leveling_certificates.rs");
example!(stable_pairs, "stable_pairs.rs");
example!(partition_pipeline, "partition_pipeline.rs");
example!(oracle_crosscheck, "oracle_crosscheck.rs");
example!(random_instances, "random_instances.rs");
example!(command_line, "command_line.rs");
