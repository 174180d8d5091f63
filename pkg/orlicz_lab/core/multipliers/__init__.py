# Desigualdade de Young generalizada e multiplicadores
