# Carregamento e exportação de arquivos
