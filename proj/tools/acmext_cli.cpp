// placeholder until the pipeline lands
#include <cstdio>
int main() { std::puts("acmext: pipeline not wired yet"); return 1; }
