# Unit tests package
