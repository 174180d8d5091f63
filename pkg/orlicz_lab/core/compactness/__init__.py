# Identidades da prova de compacidade
