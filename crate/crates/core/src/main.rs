fn main() { std::process::exit(skein::cli::run()); }
