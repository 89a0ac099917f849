fn main() {
    // Restore default SIGPIPE handling so `pmathieu ... | head` terminates
    // quietly instead of panicking mid-print on the closed pipe.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(pmathieu::cli::run());
}
