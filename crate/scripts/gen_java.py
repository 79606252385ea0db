#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Synthesize Java methods as corpus JSONL.
# Usage: gen_java.py N SEED OUT.jsonl
import json
import random
import sys

NOUNS = ["user", "item", "count", "name", "value", "index", "buffer", "node", "key", "result", "total", "path", "entry", "size", "limit"]
VERBS = ["get", "compute", "find", "load", "parse", "build", "update", "check", "merge", "read", "collect", "apply"]
STRINGS = ['"hello"', '"a */ b"', '"// not a comment"', '"/* x */"', '"tab\\tsep"', '"quote \\" inside"', '"ünïcode"', '""', '"{}"']
CHARS = ["'a'", "'\\''", "'/'", "'*'", "'\\n'"]


class Gen:
    def __init__(self, rng):
        self.r = rng
        self.vars = []
        self.depth = 0
        self.counter = 0
        self.finals = set()

    def fresh(self, kind):
        self.counter += 1
        base = self.r.choice(NOUNS)
        name = "%s%d" % (base, self.counter) if self.r.random() < 0.5 else base + kind.capitalize() + str(self.counter)
        return name

    def ident(self, typ):
        pool = [n for n, t in self.vars if t == typ]
        return self.r.choice(pool) if pool else None

    def int_expr(self, d=0):
        r = self.r
        v = self.ident("int")
        choices = [str(r.randint(0, 99))]
        if v:
            choices += [v, v, "%s + %d" % (v, r.randint(1, 9)), "%s * 2" % v, "Math.max(%s, %d)" % (v, r.randint(0, 9))]
        s = self.ident("String")
        if s:
            choices.append("%s.length()" % s)
        lst = self.ident("List<Integer>")
        if lst:
            choices.append("%s.size()" % lst)
        e = r.choice(choices)
        if d < 2 and r.random() < 0.3:
            e = "(%s %s %s)" % (e, r.choice(["+", "-", "*", "%", "/"]), self.int_expr(d + 1)) if "/" not in e else e
        return e

    def str_expr(self):
        r = self.r
        s = self.ident("String")
        choices = [r.choice(STRINGS), "String.valueOf(%s)" % self.int_expr()]
        if s:
            choices += [s, "%s.trim()" % s, "%s + %s" % (s, r.choice(STRINGS)), "%s.toUpperCase()" % s]
        return r.choice(choices)

    def bool_expr(self):
        r = self.r
        choices = ["%s > %s" % (self.int_expr(), self.int_expr()), "%s == 0" % self.int_expr()]
        s = self.ident("String")
        if s:
            choices += ["%s.isEmpty()" % s, "%s != null" % s, "%s instanceof String" % s]
        b = self.ident("boolean")
        if b:
            choices += [b, "!" + b]
        return r.choice(choices)

    def expr(self, typ):
        return {"int": self.int_expr, "String": self.str_expr, "boolean": self.bool_expr}[typ]()

    def block(self, ind, n):
        saved = list(self.vars)
        self.depth += 1
        lines = []
        for _ in range(n):
            lines += self.stmt(ind)
        self.depth -= 1
        self.vars = saved
        return lines

    def stmt(self, ind):
        r = self.r
        p = " " * ind
        k = r.randrange(16) if self.depth < 3 else r.randrange(5)
        if k in (0, 1, 2):
            typ = r.choice(["int", "String", "boolean"])
            name = self.fresh(typ)
            final = typ != "boolean" and r.random() < 0.5
            line = "%s%s%s %s = %s;" % (p, "final " if final else "", typ, name, self.expr(typ))
            self.vars.append((name, typ))
            if final:
                self.finals.add(name)
            return [line]
        if k == 3:
            v = self.ident("int")
            if v and v not in self.finals:
                return ["%s%s %s %s;" % (p, v, r.choice(["+=", "-=", "="]), self.int_expr())]
            return ["%sSystem.out.println(%s);" % (p, self.str_expr())]
        if k == 4:
            comment = r.choice(["// %s the %s" % (r.choice(VERBS), r.choice(NOUNS)), "/* %s */" % r.choice(NOUNS), "// TODO: */ not closing"])
            return [p + comment]
        if k == 5:
            out = ["%sif (%s) {" % (p, self.bool_expr())] + self.block(ind + 4, r.randint(1, 3))
            if r.random() < 0.5:
                out += ["%s} else {" % p] + self.block(ind + 4, r.randint(1, 2))
            return out + [p + "}"]
        if k == 6:
            i = self.fresh("i")
            self.vars.append((i, "int"))
            out = ["%sfor (int %s = 0; %s < %s; %s++) {" % (p, i, i, self.int_expr(), i)] + self.block(ind + 4, r.randint(1, 3)) + [p + "}"]
            self.vars.remove((i, "int"))
            return out
        if k == 7:
            lst = self.fresh("list")
            x = self.fresh("x")
            out = ["%sList<Integer> %s = new ArrayList<>();" % (p, lst), "%sfor (int %s : new int[] {1, 2, 3}) {" % (p, x), "%s    %s.add(%s);" % (p, lst, x), p + "}"]
            self.vars.append((lst, "List<Integer>"))
            return out
        if k == 8:
            out = ["%swhile (%s) {" % (p, self.bool_expr())] + self.block(ind + 4, r.randint(1, 2)) + ["%s    break;" % p, p + "}"]
            return out
        if k == 9:
            e = self.fresh("e")
            out = ["%stry {" % p] + self.block(ind + 4, r.randint(1, 2))
            out += ["%s} catch (%s %s) {" % (p, r.choice(["RuntimeException", "IllegalStateException | IllegalArgumentException", "Exception"]), e)]
            out += ["%s    throw new IllegalStateException(%s.getMessage(), %s);" % (p, e, e)]
            if r.random() < 0.4:
                out += ["%s} finally {" % p] + self.block(ind + 4, 1)
            return out + [p + "}"]
        if k == 10:
            f = self.fresh("fn")
            a = self.fresh("a")
            return ["%sFunction<Integer, Integer> %s = %s -> %s * 2;" % (p, f, a, a), "%sSystem.out.println(%s.apply(%s));" % (p, f, self.int_expr())]
        if k == 11:
            v = self.fresh("label")
            out = ["%sswitch (%s) {" % (p, self.int_expr())]
            for c in sorted(r.sample(range(10), 2)):
                out += ["%s    case %d:" % (p, c), "%s        System.out.println(%s);" % (p, r.choice(STRINGS)), "%s        break;" % p]
            return out + ["%s    default:" % p, "%s        break;" % p, p + "}"]
        if k == 12:
            r_ = self.fresh("task")
            return ["%sRunnable %s = new Runnable() {" % (p, r_), "%s    @Override" % p, "%s    public void run() {" % p,
                    "%s        System.out.println(%s);" % (p, r.choice(STRINGS)), "%s    }" % p, "%s};" % p, "%s%s.run();" % (p, r_)]
        if k == 13:
            c = self.fresh("ch")
            return ["%schar %s = %s;" % (p, c, r.choice(CHARS))]
        if k == 14:
            sb = self.fresh("sb")
            return ["%sStringBuilder %s = new StringBuilder();" % (p, sb), "%s%s.append(%s).append('/');" % (p, sb, self.str_expr()),
                    "%sString %sText = %s.toString();" % (p, sb, sb)]
        arr = self.fresh("arr")
        return ["%sint[] %s = {%s};" % (p, arr, ", ".join(str(r.randint(0, 9)) for _ in range(r.randint(1, 4)))),
                "%sArrays.sort(%s);" % (p, arr)]

    def method(self):
        r = self.r
        self.vars = []
        self.counter = 0
        self.finals = set()
        verb, noun = r.choice(VERBS), r.choice(NOUNS)
        name = verb + noun.capitalize()
        ret = r.choice(["int", "String", "boolean", "void", "int", "String"])
        params = []
        for _ in range(r.randint(0, 3)):
            typ = r.choice(["int", "String", "boolean"])
            pname = self.fresh(typ)
            final = r.random() < 0.2
            params.append("%s%s %s" % ("final " if final else "", typ, pname))
            if final:
                self.finals.add(pname)
            self.vars.append((pname, typ))
        if r.random() < 0.1:
            params.append("int... rest")
        mods = r.choice(["public ", "private ", "protected ", "", "public static ", "static ", "public synchronized "])
        head = "%s%s %s(%s)" % (mods, ret, name, ", ".join(params))
        if r.random() < 0.2:
            head += " throws IOException"
        lines = []
        if r.random() < 0.15:
            lines.append("@Override" if "static" not in mods else "@Deprecated")
        lines.append(head + " {")
        lines += self.block(4, r.randint(1, 6))
        if ret != "void":
            lines.append("    return %s;" % self.expr(ret))
        elif r.random() < 0.5:
            lines.append("    return;")
        lines.append("}")
        code = "\n".join(lines)
        if r.random() < 0.1:
            code = " ".join(l.strip() for l in lines if not l.strip().startswith("//"))
        return code, verb, noun


def main():
    n, seed, out = int(sys.argv[1]), int(sys.argv[2]), sys.argv[3]
    rng = random.Random(seed)
    gen = Gen(rng)
    with open(out, "w") as f:
        for i in range(n):
            code, verb, noun = gen.method()
            record = {"repo": "synthetic", "path": "Gen%d.java" % (i // 50), "func_name": code.split("(")[0].split()[-1],
                      "code": code, "docstring": "%ss the %s." % (verb.capitalize(), noun), "language": "java"}
            f.write(json.dumps(record) + "\n")


if __name__ == "__main__":
    main()
