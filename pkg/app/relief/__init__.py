"""Relief feature selection: quantum similarity pipeline and classical baseline."""
