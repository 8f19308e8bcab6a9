# Euclidean Jordan algebra package
