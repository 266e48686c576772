"""Command line interface: build states, run verification suites and plot."""
