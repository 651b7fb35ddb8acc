//! Every runnable example doubles as a smoke test.

macro_rules! example_test {
    ($test:ident, $module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example_test!(cdf_sets_runs, cdf_sets, "cdf_sets.rs");
example_test!(fermi_dirac_fit_runs, fermi_dirac_fit, "fermi_dirac_fit.rs");
example_test!(polynomial_fit_runs, polynomial_fit, "polynomial_fit.rs");
example_test!(pipeline_report_runs, pipeline_report, "pipeline_report.rs");
example_test!(grid_oracle_runs, grid_oracle, "grid_oracle.rs");
example_test!(log_log_fit_runs, log_log_fit, "log_log_fit.rs");
example_test!(plot_data_runs, plot_data, "plot_data.rs");
