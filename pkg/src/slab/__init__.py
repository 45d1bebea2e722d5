"""Low-complexity infinite words with exact arithmetic."""
