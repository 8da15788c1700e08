#include <cstddef>
#include <cstdint>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define FPR_X86 1
#endif

namespace fpr {

std::size_t count_fixed_u16_scalar(const std::uint16_t* img, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t j = 0; j < n; ++j) c += (img[j] == j);
  return c;
}

std::size_t count_fixed_u32_scalar(const std::uint32_t* img, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t j = 0; j < n; ++j) c += (img[j] == j);
  return c;
}

#ifdef FPR_X86
namespace {

__attribute__((target("avx2"))) std::size_t count_u16_avx2(const std::uint16_t* img,
                                                           std::size_t n) {
  std::size_t c = 0, j = 0;
  __m256i idx = _mm256_setr_epi16(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15);
  const __m256i step = _mm256_set1_epi16(16);
  for (; j + 16 <= n && j + 16 <= 65536; j += 16) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(img + j));
    unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi16(v, idx)));
    c += static_cast<std::size_t>(__builtin_popcount(mask)) / 2;
    idx = _mm256_add_epi16(idx, step);
  }
  for (; j < n; ++j) c += (img[j] == j);
  return c;
}

__attribute__((target("avx2"))) std::size_t count_u32_avx2(const std::uint32_t* img,
                                                           std::size_t n) {
  std::size_t c = 0, j = 0;
  __m256i idx = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i step = _mm256_set1_epi32(8);
  for (; j + 8 <= n; j += 8) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(img + j));
    int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(v, idx)));
    c += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    idx = _mm256_add_epi32(idx, step);
  }
  for (; j < n; ++j) c += (img[j] == j);
  return c;
}

bool detect_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}

}  // namespace

bool simd_available() {
  static const bool ok = detect_avx2();
  return ok;
}

std::size_t count_fixed_u16(const std::uint16_t* img, std::size_t n) {
  return simd_available() ? count_u16_avx2(img, n) : count_fixed_u16_scalar(img, n);
}

std::size_t count_fixed_u32(const std::uint32_t* img, std::size_t n) {
  return simd_available() ? count_u32_avx2(img, n) : count_fixed_u32_scalar(img, n);
}

#else

bool simd_available() { return false; }
std::size_t count_fixed_u16(const std::uint16_t* img, std::size_t n) {
  return count_fixed_u16_scalar(img, n);
}
std::size_t count_fixed_u32(const std::uint32_t* img, std::size_t n) {
  return count_fixed_u32_scalar(img, n);
}

#endif

}  // namespace fpr
