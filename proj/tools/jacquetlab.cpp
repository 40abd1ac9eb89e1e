// Placeholder during bring-up; the full CLI is added with the report layer.
int main() { return 0; }
