from .bench import BenchEntry, BenchReport, run_bench, run_roundtrip
