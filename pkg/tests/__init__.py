# Tests for the correlation toolkit
