#include "sqz/kernels.hpp"

namespace sqz::kernels {

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> tables{&scalar_table()};
  if (const KernelTable* t = avx2_table(); t != nullptr && cpu_supports_avx2()) tables.push_back(t);
  return tables;
}

const KernelTable& active_table() {
  static const KernelTable& table = *available_tables().back();
  return table;
}

}  // namespace sqz::kernels
