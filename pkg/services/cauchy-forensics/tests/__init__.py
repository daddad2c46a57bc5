# Tests for cauchy-forensics
