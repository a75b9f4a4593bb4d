#include "eqdesign/eqdesign.hpp"
int main() { return 0; }
