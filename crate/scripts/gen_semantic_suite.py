#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Write the Python semantic-preservation suite as corpus JSONL.
# Usage: gen_semantic_suite.py OUT.jsonl
import json
import sys

SUITE = []


def case(inputs):
    def register(src):
        SUITE.append((src.strip("\n"), inputs))
    return register


case([[1, 2], [-3, 3], [0, 0]])('''
def add(a, b):
    """Return the sum of a and b."""
    return a + b
''')
case([[[3, 1, 2]], [[]], [[5, 5, 1]]])('''
def sort_desc(items):
    result = sorted(items, reverse=True)
    return result
''')
case([[5], [0], [1], [10]])('''
def factorial(n):
    if n <= 1:
        return 1
    return n * factorial(n - 1)
''')
case([[10], [1], [2]])('''
def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a
''')
case([["hello world"], [""], ["a b  c"]])('''
def word_count(text):
    counts = {}
    for word in text.split():
        counts[word] = counts.get(word, 0) + 1
    return counts
''')
case([[[1, 2, 3, 4]], [[]], [[7]]])('''
def evens(xs):
    return [x for x in xs if x % 2 == 0]
''')
case([["racecar"], ["abc"], [""]])('''
def is_palindrome(s):
    cleaned = s.lower()
    return cleaned == cleaned[::-1]
''')
case([[[1, 5, 3]], [[-1, -7]]])('''
def maximum(values):
    best = values[0]
    for v in values[1:]:
        if v > best:
            best = v
    return best
''')
case([[3, 0], [7, 2], [9, 3]])('''
def safe_div(a, b):
    try:
        return a / b
    except ZeroDivisionError:
        return None
''')
case([[[1, 2], [3, 4]], [[], []]])('''
def pairwise_sum(xs, ys):
    total = []
    for x, y in zip(xs, ys):
        total.append(x + y)
    return total
''')
case([["abc"], ["Hello"]])('''
def reverse_words(s):
    return " ".join(reversed(s.split()))
''')
case([[12, 18], [7, 5], [0, 4]])('''
def gcd(a, b):
    while b:
        a, b = b, a % b
    return a
''')
case([[20], [2], [1]])('''
def primes_upto(n):
    sieve = [True] * (n + 1)
    out = []
    for i in range(2, n + 1):
        if sieve[i]:
            out.append(i)
            for j in range(i * i, n + 1, i):
                sieve[j] = False
    return out
''')
case([[[[1, 2], [3]]], [[[], [4, 5]]]])('''
def flatten(nested):
    flat = []
    for group in nested:
        for item in group:
            flat.append(item)
    return flat
''')
case([[{"a": 1, "b": 2}], [{}]])('''
def invert(mapping):
    return {v: k for k, v in mapping.items()}
''')
case([[3], [0]])('''
def make_counter(start):
    count = start

    def step():
        nonlocal count
        count += 1
        return count

    step()
    return step()
''')
case([[[1, 2, 3], 2], [[4], 0]])('''
def scale(values, factor):
    return list(map(lambda v: v * factor, values))
''')
case([["a,b,,c"], [""]])('''
def split_csv(line):
    parts = line.split(",")
    return [p for p in parts if p]
''')
case([[5], [-2]])('''
def countdown(n):
    out = []
    while n > 0:
        out.append(n)
        n -= 1
    else:
        out.append("done")
    return out
''')
case([["x"], [3]])('''
def describe(value):
    if isinstance(value, str):
        kind = "string"
    elif isinstance(value, int):
        kind = "integer"
    else:
        kind = "other"
    return "%s:%r" % (kind, value)
''')
case([[[3, 1, 2]], [[1]]])('''
def bubble_sort(arr):
    arr = list(arr)
    n = len(arr)
    for i in range(n):
        for j in range(n - i - 1):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
    return arr
''')
case([[[1, 3, 5, 7], 5], [[1, 3], 4]])('''
def binary_search(arr, target):
    lo, hi = 0, len(arr) - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        if arr[mid] == target:
            return mid
        if arr[mid] < target:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1
''')
case([["Hello World"], ["xyz"]])('''
def count_vowels(text):
    vowels = set("aeiou")
    return sum(1 for ch in text.lower() if ch in vowels)
''')
case([[3], [1]])('''
def squares(n):
    for i in range(n):
        yield i * i
''')
case([[[1, 2, 2, 3, 1]], [[]]])('''
def dedupe(items):
    seen = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out
''')
case([[2, 10], [3, 0]])('''
def power(base, exp):
    result = 1
    for _ in range(exp):
        result *= base
    return result
''')
case([["snake_case_name"], ["x"]])('''
def to_camel(name):
    head, *rest = name.split("_")
    return head + "".join(part.title() for part in rest)
''')
case([[[1, 2, 3]], [[]]])('''
def average(nums):
    if not nums:
        raise ValueError("empty input")
    return sum(nums) / len(nums)
''')
case([[{"b": 2, "a": 1}], [{}]])('''
def sorted_keys(d):
    keys = list(d)
    keys.sort()
    return keys
''')
case([["aaabccdd"], [""]])('''
def run_length(s):
    out = []
    i = 0
    while i < len(s):
        j = i
        while j < len(s) and s[j] == s[i]:
            j += 1
        out.append("%s%d" % (s[i], j - i))
        i = j
    return "".join(out)
''')
case([[4], [1]])('''
def pascal_row(n):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row
''')
case([[[1, 2, 3, 4, 5], 2], [[1], 3]])('''
def chunks(seq, size):
    return [seq[i:i + size] for i in range(0, len(seq), size)]
''')
case([["([]{})"], ["(]"], [""]])('''
def balanced(text):
    pairs = {")": "(", "]": "[", "}": "{"}
    stack = []
    for ch in text:
        if ch in "([{":
            stack.append(ch)
        elif ch in pairs:
            if not stack or stack.pop() != pairs[ch]:
                return False
    return not stack
''')
case([[10], [255], [0]])('''
def to_binary(n):
    if n == 0:
        return "0"
    digits = []
    while n:
        digits.append(str(n % 2))
        n //= 2
    return "".join(reversed(digits))
''')
case([["1010"], ["0"]])('''
def from_binary(bits):
    value = 0
    for b in bits:
        value = value * 2 + int(b)
    return value
''')
case([[[3, 4]], [[0, 0]]])('''
def norm(vec):
    import math
    return math.sqrt(sum(x * x for x in vec))
''')
case([["hello", 1], ["xyz", 3]])('''
def caesar(text, shift):
    out = ""
    for ch in text:
        if ch.isalpha():
            out += chr((ord(ch) - 97 + shift) % 26 + 97)
        else:
            out += ch
    return out
''')
case([[[[1, 2], [3, 4]]], [[[1]]]])('''
def transpose(matrix):
    return [list(row) for row in zip(*matrix)]
''')
case([[[[1, 2], [3, 4]], [[5, 6], [7, 8]]]])('''
def matmul(a, b):
    rows = len(a)
    cols = len(b[0])
    inner = len(b)
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            for k in range(inner):
                out[i][j] += a[i][k] * b[k][j]
    return out
''')
case([["listen", "silent"], ["a", "b"]])('''
def anagrams(a, b):
    return sorted(a) == sorted(b)
''')
case([[15], [3], [7]])('''
def fizzbuzz(n):
    lines = []
    for i in range(1, n + 1):
        if i % 15 == 0:
            lines.append("FizzBuzz")
        elif i % 3 == 0:
            lines.append("Fizz")
        elif i % 5 == 0:
            lines.append("Buzz")
        else:
            lines.append(str(i))
    return lines
''')
case([[[1, -2, 3, 5, -1]], [[-1, -2]]])('''
def max_subarray(nums):
    best = cur = nums[0]
    for x in nums[1:]:
        cur = max(x, cur + x)
        best = max(best, cur)
    return best
''')
case([["a b c"], ["one"]])('''
def print_lines(text):
    for word in text.split():
        print(word)
    return len(text)
''')
case([[{"a": {"b": 1}}, "a.b"], [{"a": 1}, "x"]])('''
def dig(data, path):
    node = data
    for key in path.split("."):
        if not isinstance(node, dict) or key not in node:
            return None
        node = node[key]
    return node
''')
case([[[5, 2, 9, 1]], [[1]]])('''
def merge_sort(xs):
    if len(xs) <= 1:
        return xs
    mid = len(xs) // 2
    left = merge_sort(xs[:mid])
    right = merge_sort(xs[mid:])
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
    return merged + left[i:] + right[j:]
''')
case([[[3, 6, 1, 8]], [[]]])('''
def quick_sort(xs):
    if not xs:
        return []
    pivot, rest = xs[0], xs[1:]
    lower = [x for x in rest if x < pivot]
    upper = [x for x in rest if x >= pivot]
    return quick_sort(lower) + [pivot] + quick_sort(upper)
''')
case([["The quick brown fox"], [""]])('''
def longest_word(sentence):
    words = sentence.split()
    if not words:
        return ""
    return max(words, key=len)
''')
case([[[1, 2, 3], [2, 3, 4]], [[], [1]]])('''
def common(a, b):
    return sorted(set(a) & set(b))
''')
case([[3, 4], [5, 12]])('''
def hypot(a, b):
    from math import sqrt
    return round(sqrt(a * a + b * b), 6)
''')
case([[100.0, 0.05, 2], [10.0, 0.0, 3]])('''
def compound(principal, rate, years):
    amount = principal
    for year in range(years):
        amount = amount * (1 + rate)
    return round(amount, 4)
''')
case([["key=value;x=1"], [""]])('''
def parse_pairs(text):
    out = {}
    for item in text.split(";"):
        if "=" in item:
            k, _, v = item.partition("=")
            out[k.strip()] = v.strip()
    return out
''')
case([[[["a", 1], ["b", 2]]], [[]]])('''
def to_dict(pairs):
    result = dict()
    for key, value in pairs:
        result[key] = value
    return result
''')
case([[6], [7]])('''
def collatz_steps(n):
    steps = 0
    while n != 1:
        n = n // 2 if n % 2 == 0 else 3 * n + 1
        steps += 1
    return steps
''')
case([["hello"], ["AbC"]])('''
def char_freq(s):
    freq = {}
    for c in s:
        freq[c] = freq.get(c, 0) + 1
    return sorted(freq.items())
''')
case([[[1, 2, 3, 4]], [[2]]])('''
def product(nums):
    total = 1
    for n in nums:
        total = total * n
    return total
''')
case([[[1, 2, 3]], [[]]])('''
def cumulative(xs):
    out, running = [], 0
    for x in xs:
        running += x
        out.append(running)
    return out
''')
case([["  padded  "], ["x"]])('''
def normalize_space(text):
    return " ".join(text.split())
''')
case([[28], [12], [1]])('''
def is_perfect(n):
    divisors = [d for d in range(1, n) if n % d == 0]
    return sum(divisors) == n
''')
case([[[4, 1, 3], 2], [[1, 2], 5]])('''
def top_k(values, k):
    ordered = sorted(values)
    ordered.reverse()
    return ordered[:k]
''')
case([[2024], [1900], [2000]])('''
def is_leap(year):
    if year % 400 == 0:
        return True
    if year % 100 == 0:
        return False
    return year % 4 == 0
''')
case([[1994], [4], [3999]])('''
def to_roman(num):
    table = [(1000, "M"), (900, "CM"), (500, "D"), (400, "CD"), (100, "C"), (90, "XC"),
             (50, "L"), (40, "XL"), (10, "X"), (9, "IX"), (5, "V"), (4, "IV"), (1, "I")]
    out = ""
    for value, sym in table:
        while num >= value:
            out += sym
            num -= value
    return out
''')
case([["MCMXCIV"], ["IV"]])('''
def from_roman(s):
    values = {"I": 1, "V": 5, "X": 10, "L": 50, "C": 100, "D": 500, "M": 1000}
    total = 0
    prev = 0
    for ch in reversed(s):
        v = values[ch]
        if v < prev:
            total -= v
        else:
            total += v
            prev = v
    return total
''')
case([[[3, 1, 2], 1], [[1], 0]])('''
def rotate(xs, k):
    if not xs:
        return xs
    k %= len(xs)
    return xs[-k:] + xs[:-k] if k else list(xs)
''')
case([["abcabcbb"], ["bbbb"], [""]])('''
def longest_unique(s):
    start = best = 0
    last = {}
    for i, ch in enumerate(s):
        if ch in last and last[ch] >= start:
            start = last[ch] + 1
        last[ch] = i
        best = max(best, i - start + 1)
    return best
''')
case([[[2, 7, 11, 15], 9], [[1, 2], 10]])('''
def two_sum(nums, target):
    index = {}
    for i, n in enumerate(nums):
        if target - n in index:
            return [index[target - n], i]
        index[n] = i
    return None
''')
case([["hello"], [""]])('''
def first_unique(s):
    counts = {}
    for c in s:
        counts[c] = counts.get(c, 0) + 1
    for i, c in enumerate(s):
        if counts[c] == 1:
            return i
    return -1
''')
case([[[1, 2, 3]], [[0]]])('''
def describe_list(xs):
    parts = []
    for i, x in enumerate(xs):
        parts.append(f"{i}={x}")
    return ", ".join(parts)
''')
case([[5], [0]])('''
def triangle(n):
    rows = []
    for i in range(1, n + 1):
        rows.append("*" * i)
    return "\\n".join(rows)
''')
case([["x"], ["abc"]])('''
def with_default(name, greeting="Hello"):
    return greeting + ", " + name
''')
case([[1, 2, 3], [4]])('''
def variadic(first, *rest):
    total = first
    for r in rest:
        total += r
    return (total, len(rest))
''')
case([[[1, 2, 3]], [[]]])('''
def stats(xs):
    if not xs:
        return {}
    mean = sum(xs) / len(xs)
    var = sum((x - mean) ** 2 for x in xs) / len(xs)
    return {"mean": mean, "var": round(var, 6), "n": len(xs)}
''')
case([["a.b.c"], ["none"]])('''
def extension(filename):
    if "." not in filename:
        return ""
    return filename.rsplit(".", 1)[1]
''')
case([["/usr/local/bin"], ["rel/path"]])('''
def path_parts(path):
    absolute = path.startswith("/")
    parts = [p for p in path.split("/") if p]
    return absolute, parts
''')
case([[[5, 3, 8]], [[1]]])('''
def second_largest(xs):
    unique = sorted(set(xs))
    if len(unique) < 2:
        return None
    return unique[-2]
''')
case([[[1, 2, 3, 4, 5, 6]], [[]]])('''
def split_parity(nums):
    odd, even = [], []
    for n in nums:
        (even if n % 2 == 0 else odd).append(n)
    return odd, even
''')
case([[3], [5]])('''
def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
''')
case([["Hello, World!"], ["123"]])('''
def swap_case(s):
    out = []
    for ch in s:
        if ch.isupper():
            out.append(ch.lower())
        elif ch.islower():
            out.append(ch.upper())
        else:
            out.append(ch)
    return "".join(out)
''')
case([[[10, 20, 30], 1], [[1], 5]])('''
def get_or_default(xs, i):
    try:
        return xs[i]
    except IndexError:
        return "missing"
    finally:
        print("checked", i)
''')
case([["12"], ["abc"]])('''
def parse_int(text):
    try:
        value = int(text)
    except ValueError as err:
        return "bad: " + str(err)
    else:
        return value * 2
''')
case([[[1, 2, 3]], [[4, 5]]])('''
def sum_of_squares(xs):
    total = 0
    for x in xs:
        sq = x ** 2
        total += sq
    return total
''')
case([[4], [1]])('''
def hanoi(n):
    moves = []

    def solve(k, src, dst, tmp):
        if k == 0:
            return
        solve(k - 1, src, tmp, dst)
        moves.append((src, dst))
        solve(k - 1, tmp, dst, src)

    solve(n, "A", "C", "B")
    return len(moves), moves[:3]
''')
case([[[1, 2, 3]], [[]]])('''
def all_subsets(items):
    subsets = [[]]
    for item in items:
        subsets = subsets + [s + [item] for s in subsets]
    return subsets
''')
case([["abc"], ["a"]])('''
def permutations(s):
    if len(s) <= 1:
        return [s]
    out = []
    for i, ch in enumerate(s):
        for rest in permutations(s[:i] + s[i + 1:]):
            out.append(ch + rest)
    return out
''')
case([[{"x": 1, "y": 2}, {"y": 3, "z": 4}], [{}, {}]])('''
def merge_dicts(a, b):
    merged = dict(a)
    merged.update(b)
    return sorted(merged.items())
''')
case([["hello world foo"], ["a"]])('''
def capitalize_words(text):
    return " ".join(w[:1].upper() + w[1:] for w in text.split(" "))
''')
case([[10, 3], [-7, 2]])('''
def divmod_pair(a, b):
    q = a // b
    r = a % b
    return q, r
''')
case([[[0, 1, 0, 3, 12]], [[0]]])('''
def move_zeros(nums):
    nonzero = [n for n in nums if n != 0]
    return nonzero + [0] * (len(nums) - len(nonzero))
''')
case([[[1, 1, 2, 3, 3, 3]], [[]]])('''
def mode(xs):
    best, best_count = None, 0
    counts = {}
    for x in xs:
        counts[x] = counts.get(x, 0) + 1
        if counts[x] > best_count:
            best, best_count = x, counts[x]
    return best
''')
case([[[3, 1, 2]], [[2, 2]]])('''
def median(xs):
    s = sorted(xs)
    n = len(s)
    mid = n // 2
    if n % 2:
        return s[mid]
    return (s[mid - 1] + s[mid]) / 2
''')
case([["a1b2c3"], ["none"]])('''
def digits_only(s):
    return "".join(filter(str.isdigit, s))
''')
case([[5, 3], [2, 2]])('''
def binomial(n, k):
    if k == 0 or k == n:
        return 1
    return binomial(n - 1, k - 1) + binomial(n - 1, k)
''')
case([[[[1, [2, [3]]], 4]], [[]]])('''
def deep_flatten(x):
    out = []
    stack = [x]
    while stack:
        item = stack.pop()
        if isinstance(item, list):
            stack.extend(reversed(item))
        else:
            out.append(item)
    return out
''')
case([["hello", "l"], ["abc", "z"]])('''
def find_all(s, ch):
    positions = []
    for i in range(len(s)):
        if s[i] == ch:
            positions.append(i)
    return positions
''')
case([[[1, 2, 3, 4]], [[9]]])('''
def alternating_sum(xs):
    total = 0
    sign = 1
    for x in xs:
        total += sign * x
        sign = -sign
    return total
''')
case([[[3, 1, 2], [1, 2, 3]]])('''
def same_elements(a, b):
    class Box:
        def __init__(self, items):
            self.items = sorted(items)

    return Box(a).items == Box(b).items
''')
case([[[["b", 2], ["a", 1], ["c", 2]]], [[]]])('''
def sort_records(records):
    return sorted(records, key=lambda r: (-r[1], r[0]))
''')
case([[8], [0]])('''
def bits_set(n):
    count = 0
    while n:
        n &= n - 1
        count += 1
    return count
''')
case([[3], [6]])('''
def gray_code(n):
    return [i ^ (i >> 1) for i in range(2 ** n)][:8]
''')
case([["abc", 2], ["x", 0]])('''
def repeat_chars(s, k):
    result = ""
    for ch in s:
        result += ch * k
    return result
''')
case([[[1, 2, 3, 2, 1]], [[1, 2]]])('''
def is_symmetric(xs):
    for i in range(len(xs) // 2):
        if xs[i] != xs[-1 - i]:
            return False
    return True
''')
case([[[-1, 0, 1, 2, -1, -4]], [[0, 0]]])('''
def three_sum_zero(nums):
    nums = sorted(nums)
    found = set()
    for i in range(len(nums)):
        for j in range(i + 1, len(nums)):
            for k in range(j + 1, len(nums)):
                if nums[i] + nums[j] + nums[k] == 0:
                    found.add((nums[i], nums[j], nums[k]))
    return sorted(found)
''')
case([[100], [37]])('''
def digit_sum(n):
    total = 0
    for d in str(abs(n)):
        total += int(d)
    return total
''')
case([[[1, 2], [3, 4, 5]], [[], [1]]])('''
def interleave(a, b):
    out = []
    for i in range(max(len(a), len(b))):
        if i < len(a):
            out.append(a[i])
        if i < len(b):
            out.append(b[i])
    return out
''')
case([["Hello World"], [""]])('''
def acronym(phrase):
    letters = [w[0].upper() for w in phrase.split() if w]
    return "".join(letters)
''')
case([[[["a", 3], ["b", 1]]]])('''
def expand(pairs):
    out = []
    for ch, n in pairs:
        out.extend([ch] * n)
    return "".join(out)
''')
case([[7], [-1]])('''
def sign_label(x):
    label = "positive" if x > 0 else "negative" if x < 0 else "zero"
    return label
''')
case([["madam in eden"], ["ab"]])('''
def longest_palindrome(s):
    best = ""
    for i in range(len(s)):
        for j in range(i, len(s)):
            sub = s[i:j + 1]
            if sub == sub[::-1] and len(sub) > len(best):
                best = sub
    return best
''')
case([[[1, 2, 3, 4]], [[1]]])('''
def window_sums(xs):
    sums = []
    for i in range(len(xs) - 1):
        window = xs[i:i + 2]
        sums.append(sum(window))
    return sums
''')
case([[2], [5]])('''
def multiplication_table(n):
    return {i: [i * j for j in range(1, n + 1)] for i in range(1, n + 1)}
''')
case([["aAbB"], ["xyz"]])('''
def unique_lower(s):
    return sorted({c.lower() for c in s})
''')
case([[["x", "y", "z"]], [[]]])('''
def enumerate_items(items):
    lines = []
    for number, item in enumerate(items, start=1):
        lines.append("%d. %s" % (number, item))
    return lines
''')
case([[1, 5], [3, 3]])('''
def range_list(lo, hi):
    values = list(range(lo, hi))
    assert len(values) == max(0, hi - lo)
    return values
''')
case([[[1, 2, 3]], [[]]])('''
def pop_all(stack):
    stack = list(stack)
    popped = []
    while stack:
        popped.append(stack.pop())
    return popped
''')
case([["hello world"], ["x"]])('''
def title_and_len(text):
    with_title = text.title()
    del text
    return with_title, len(with_title)
''')
case([[[3, 2, 1]], [[]]])('''
def selection_sort(xs):
    xs = list(xs)
    for i in range(len(xs)):
        m = i
        for j in range(i + 1, len(xs)):
            if xs[j] < xs[m]:
                m = j
        xs[i], xs[m] = xs[m], xs[i]
    return xs
''')
case([[[4, 3, 2, 1]], [[1]]])('''
def insertion_sort(xs):
    out = []
    for x in xs:
        i = len(out)
        while i > 0 and out[i - 1] > x:
            i -= 1
        out.insert(i, x)
    return out
''')
case([["hello"], [""]])('''
def char_codes(s):
    codes = [ord(c) for c in s]
    return sum(codes), codes[:3]
''')
case([[[1, 2, 3]], [[-1]]])('''
def any_all(xs):
    positive = all(x > 0 for x in xs)
    has_even = any(x % 2 == 0 for x in xs)
    return positive, has_even
''')
case([[3], [0]])('''
def nested_loops_break(n):
    found = None
    for i in range(n):
        for j in range(n):
            if i * j == 2:
                found = (i, j)
                break
        if found:
            break
    return found
''')
case([["a-b_c d"], ["plain"]])('''
def slugify(text):
    out = []
    for ch in text.lower():
        if ch.isalnum():
            out.append(ch)
        elif out and out[-1] != "-":
            out.append("-")
    return "".join(out).strip("-")
''')
case([[[5, 1, 4]], [[2]]])('''
def min_max(xs):
    lo = hi = xs[0]
    for x in xs:
        if x < lo:
            lo = x
        if x > hi:
            hi = x
    return lo, hi
''')
case([[10], [1]])('''
def triangular_numbers(n):
    out = []
    total = 0
    i = 1
    while len(out) < n:
        total += i
        i += 1
        out.append(total)
    return out
''')
case([["(1+2)*3"], ["2*2"]])('''
def tokenize(expr):
    tokens = []
    number = ""
    for ch in expr:
        if ch.isdigit():
            number += ch
            continue
        if number:
            tokens.append(number)
            number = ""
        tokens.append(ch)
    if number:
        tokens.append(number)
    return tokens
''')
case([[[1, 2, 3], 2], [[], 1]])('''
def count_greater(xs, threshold):
    count = 0
    for x in xs:
        if x <= threshold:
            continue
        count += 1
    return count
''')
case([[3, 4], [0, 1]])('''
def grid_paths(rows, cols):
    dp = [[1] * (cols + 1) for _ in range(rows + 1)]
    for r in range(1, rows + 1):
        for c in range(1, cols + 1):
            dp[r][c] = dp[r - 1][c] + dp[r][c - 1]
    return dp[rows][cols]
''')
case([["kitten", "sitting"], ["", "abc"]])('''
def edit_distance(a, b):
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]
''')
case([["ABCBDAB", "BDCABA"], ["a", "b"]])('''
def lcs_length(a, b):
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    return table[-1][-1]
''')
case([[[1, 2, 4, 5]], [[1, 2, 3]]])('''
def missing_number(xs):
    n = len(xs) + 1
    expected = n * (n + 1) // 2
    return expected - sum(xs)
''')
case([[{"a": [1, 2], "b": [3]}], [{}]])('''
def count_values(groups):
    total = 0
    for key in groups:
        values = groups[key]
        total += len(values)
    return total
''')
case([[[3, 3, 1]], [[]]])('''
def histogram(xs):
    lines = []
    for x in xs:
        bar = "#" * x
        lines.append(bar)
    return "|".join(lines)
''')
case([[2, 3], [5, 0]])('''
def lambda_compose(a, b):
    add = lambda x, y: x + y
    mul = lambda x, y: x * y
    return add(a, b), mul(a, b)
''')
case([["one two three"], [""]])('''
def word_lengths(text):
    result = {}
    for w in text.split():
        result.setdefault(len(w), []).append(w)
    return result
''')
case([[[1, 2, 3, 4, 5]], [[2]]])('''
def every_other(xs):
    kept = xs[::2]
    skipped = xs[1::2]
    return kept, skipped
''')
case([[3], [0]])('''
def global_reader(n):
    values = []
    for i in range(n):
        values.append(len(str(i * 1000)))
    return max(values, default=0)
''')
case([[[1, 2, 3]], [[]]])('''
def tuple_unpack(xs):
    if len(xs) < 2:
        return None
    first, *middle, last = xs
    return first, middle, last
''')
case([[4], [9]])('''
def walrus_sum(n):
    total = 0
    i = 0
    while (i := i + 1) <= n:
        total += i
    return total
''')
case([["abc"], ["hello"]])('''
def set_ops(s):
    letters = set(s)
    vowels = {"a", "e", "i", "o", "u"}
    return sorted(letters - vowels), sorted(letters & vowels)
''')
case([[5], [2]])('''
def nested_function(n):
    def square(x):
        return x * x

    def cube(x):
        return x * square(x)

    return [cube(i) for i in range(n)]
''')


def main():
    with open(sys.argv[1], "w") as f:
        for i, (src, inputs) in enumerate(SUITE):
            name = src.split("def ", 1)[1].split("(", 1)[0]
            record = {
                "id": "py%03d" % i,
                "code": src,
                "docstring": name.replace("_", " "),
                "inputs": inputs,
            }
            f.write(json.dumps(record) + "\n")


if __name__ == "__main__":
    main()
