// placeholder during bring-up
#include <cstdio>
int main() { std::puts("generator not wired yet"); return 2; }
