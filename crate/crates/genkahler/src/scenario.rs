//! Scenario files: structured-text inputs for the check orchestrator.
