# Reescalonamento de multiplicadores e mudança de medida
