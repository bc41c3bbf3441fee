#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#define SQUARE(x) ((x) * (x))

namespace algo {

int gcd(int a, int b) {
  while (b != 0) {
    int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long fib(int n) {
  long long prev = 0, curr = 1;
  for (int step = 0; step < n; ++step) {
    long long next = prev + curr;
    prev = curr;
    curr = next;
  }
  return prev;
}

int binarySearch(const std::vector<int>& sorted, int target) {
  int lo = 0;
  int hi = static_cast<int>(sorted.size()) - 1;
  while (lo <= hi) {
    int mid = lo + (hi - lo) / 2;
    if (sorted[mid] == target) return mid;
    if (sorted[mid] < target) {
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return -1;
}

void bubbleSort(std::vector<int>& arr) {
  const std::size_t len = arr.size();
  for (std::size_t i = 0; i < len; ++i) {
    bool swapped = false;
    for (std::size_t j = 0; j + 1 < len - i; ++j) {
      if (arr[j] > arr[j + 1]) {
        std::swap(arr[j], arr[j + 1]);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
}

int sumOfSquares(const int* xs, int n) {
  int acc = 0;
  for (int k = 0; k < n; ++k) acc += SQUARE(xs[k]);
  return acc;
}

std::string reverseWords(const std::string& sentence) {
  std::vector<std::string> words;
  std::string word;
  for (char c : sentence) {
    if (c == ' ') {
      if (!word.empty()) words.push_back(word);
      word.clear();
    } else {
      word += c;
    }
  }
  if (!word.empty()) words.push_back(word);
  std::reverse(words.begin(), words.end());
  std::string joined;
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (w) joined += ' ';
    joined += words[w];
  }
  return joined;
}

int mostFrequent(const std::vector<int>& data) {
  std::unordered_map<int, int> freq;
  int best = data.empty() ? 0 : data[0];
  int bestCount = 0;
  for (int d : data) {
    int c = ++freq[d];
    if (c > bestCount) {
      bestCount = c;
      best = d;
    }
  }
  return best;
}

bool isPalindrome(const std::string& s) {
  std::size_t left = 0, right = s.empty() ? 0 : s.size() - 1;
  while (left < right) {
    if (s[left++] != s[right--]) return false;
  }
  return true;
}

double average(const std::vector<double>& samples) {
  if (samples.empty()) return 0.0;
  double total = 0;
  for (double sample : samples) total += sample;
  return total / samples.size();
}

#if 0
int disabledHelper(int unused) { return unused; }
#else
int enabledHelper(int used) { return used * 2; }
#endif

int applyTwice(int (*fn)(int), int x) { return fn(fn(x)); }

}  // namespace algo
