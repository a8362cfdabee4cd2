// Catch2 v3 amalgamated implementation, compiled once.
#include <catch2/catch_amalgamated.cpp>
