#include <cstdio>
int main(){ std::puts("todo"); return 0; }
