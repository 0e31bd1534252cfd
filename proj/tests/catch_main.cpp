// Catch2 implementation translation unit (amalgamated distribution).
#include <catch2/catch_amalgamated.cpp>
