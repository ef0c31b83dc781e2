"""HTTP report service exposing the command verbs."""
