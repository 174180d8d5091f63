# Álgebras de blocos com traço ponderado
