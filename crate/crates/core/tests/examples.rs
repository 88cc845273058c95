macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(stitch, "stitch.rs");
example!(crs, "crs.rs");
example!(wrs, "wrs.rs");
example!(rec, "rec.rs");
example!(fairness, "fairness.rs");
example!(honest_majority, "honest_majority.rs");
example!(experiments, "experiments.rs");
