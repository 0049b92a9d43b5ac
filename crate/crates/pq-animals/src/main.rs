fn main() {
    std::process::exit(pq_animals::cli::run());
}
