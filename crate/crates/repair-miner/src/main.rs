fn main() {
    std::process::exit(repair_miner::cli::run_from_env());
}
