# Modulares, normas de Luxemburg e de Orlicz
