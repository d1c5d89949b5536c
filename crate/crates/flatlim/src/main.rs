fn main() {
    // Restore the default SIGPIPE disposition so `flatlim ... | head` dies
    // quietly like other shell tools instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(flatlim::cli::run());
}
