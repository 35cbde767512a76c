import dataclasses

import pytest

from conftest import make_app
from iccsmells.common import Confidence
from iccsmells.detectors import (
    DETECTORS, ConfigError, DetectorConfig, detect_sm01, detect_sm02, detect_sm03, detect_sm04, detect_sm05,
    detect_sm06, detect_sm07, detect_sm08, detect_sm09, detect_sm10, detect_sm11, detect_sm12,
    load_detector_config, parse_detector_config, run_all,
)
from iccsmells.smells import map_threats

H, M, L = "high", "medium", "low"


def act(src: str, cls: str = "A", base: str = "Activity") -> str:
    return f"class {cls} extends {base} {{\n{src}\n}}\n"


def confs(findings):
    return [f.confidence.label for f in findings]


# -- SM01 ------------------------------------------------------------------------

def test_sm01_grant_without_revoke():
    app = make_app({"A.java": act("void m(Uri u) { grantUriPermission(\"p\", u, 1); }")})
    found = detect_sm01(app)
    assert confs(found) == [H] and found[0].location.line == 2


def test_sm01_revoke_elsewhere_suppresses_unless_strict():
    app = make_app({"A.java": act("void m(Uri u) { grantUriPermission(\"p\", u, 1); }"),
                    "B.java": act("void m(Uri u) { revokeUriPermission(u, 1); }", "B")})
    assert detect_sm01(app) == []
    assert len(detect_sm01(app, strict=True)) == 1


def test_sm01_no_grants():
    assert detect_sm01(make_app({"A.java": act("void m() { foo(); }")})) == []


# -- SM02 ------------------------------------------------------------------------

SCHEMES = ('<activity android:name=".A"><intent-filter>'
           '<data android:scheme="{0}"/></intent-filter></activity>\n')


@pytest.mark.parametrize("scheme, conf", [("myapp", H), ("https", L), ("HTTPS", L), ("market", L)])
def test_sm02_manifest_schemes(scheme, conf):
    assert confs(detect_sm02(make_app(body=SCHEMES.format(scheme)))) == [conf]


def test_sm02_add_data_scheme():
    app = make_app({"A.java": act('void m(String s) { IntentFilter f = new IntentFilter(); f.addDataScheme("x");'
                                  ' f.addDataScheme("tel"); f.addDataScheme(s); other.addDataScheme("y"); }')})
    assert confs(detect_sm02(app)) == [H, L, H]


# -- SM03 ------------------------------------------------------------------------

@pytest.mark.parametrize("attrs, n", [("", 1), (' android:protectionLevel="signature"', 0),
                                      (' android:protectionLevel="normal"', 0)])
def test_sm03(attrs, n):
    app = make_app(top=f'<permission android:name="p.X"{attrs}/>\n')
    assert len(detect_sm03(app)) == n


# -- SM04 ------------------------------------------------------------------------

@pytest.mark.parametrize("stmt, expected", [
    ('sendBroadcast(new Intent("a.b.ACTION"));', [H]),
    ('Intent i = new Intent("a"); sendBroadcast(i, "perm.X");', []),
    ('Intent i = new Intent("a"); sendBroadcast(i, null);', [H]),
    ('Intent i = new Intent("a"); sendBroadcast(i, permField);', [L]),
    ('startActivity(new Intent(this, B.class));', []),
    ('startActivity(param);', [L]),
    ('sendOrderedBroadcast(new Intent("a"), P);', []),
    ('sendBroadcastAsUser(new Intent("a"), user, "perm.X");', []),
    ('sendBroadcastAsUser(new Intent("a"), user);', [H]),
    ('sendOrderedBroadcastAsUser(new Intent("a"), user, null, r, h, 0, null, null);', [H]),
    ('helper.sendBroadcast(new Intent("a"));', []),
    ('startActivityForResult(new Intent("a"), 1);', []),
])
def test_sm04(stmt, expected):
    src = act(f'static final String P = "p.Q"; String permField;\n void m(Intent param, UserHandle user) {{ {stmt} }}')
    assert confs(detect_sm04(make_app({"A.java": src}))) == expected


# -- SM05 ------------------------------------------------------------------------

STICKY_USE = '<uses-permission android:name="android.permission.BROADCAST_STICKY"/>\n'


def test_sm05_call_and_permission():
    app = make_app({"A.java": act("void m(Intent i) { sendStickyBroadcast(i); }")}, top=STICKY_USE)
    found = detect_sm05(app)
    assert confs(found) == [H] and found[0].location.file == "A.java"


def test_sm05_manifest_only():
    found = detect_sm05(make_app(top=STICKY_USE))
    assert confs(found) == [L] and found[0].location.file == "AndroidManifest.xml"


def test_sm05_neither():
    assert detect_sm05(make_app({"A.java": act("void m(Intent i) { sendBroadcast(i); }")})) == []


# -- SM06 ------------------------------------------------------------------------

def client(body: str, name: str = "C", base: str = "WebViewClient") -> str:
    return f"class {name} extends {base} {{\n{body}\n}}\n"


@pytest.mark.parametrize("body, expected", [
    ("public boolean shouldOverrideUrlLoading(WebView v, String u) { return false; }", [H]),
    ("public boolean shouldOverrideUrlLoading(WebView v, String u) { return super.shouldOverrideUrlLoading(v, u); }", [H]),
    ("public boolean shouldOverrideUrlLoading(WebView v, String u) { v.loadUrl(u); return true; }", [H]),
    ("public WebResourceResponse shouldInterceptRequest(WebView v, WebResourceRequest r) { return null; }", [H]),
    ("public boolean shouldOverrideUrlLoading(WebView v, String u) { return true; }", []),
    ('public boolean shouldOverrideUrlLoading(WebView v, String u) {'
     ' if (Uri.parse(u).getHost().equals("ok.com")) { return false; } return true; }', []),
])
def test_sm06_overrides(body, expected):
    assert confs(detect_sm06(make_app({"C.java": client(body)}))) == expected


def test_sm06_inherits_through_declared_types():
    src = client("", "Base") + client("public boolean shouldOverrideUrlLoading(WebView v, String u) { return false; }",
                                      "Derived", "Base")
    assert confs(detect_sm06(make_app({"C.java": src}))) == [H]


def test_sm06_default_client_at_call_site():
    src = act("WebView w; void m() { w.setWebViewClient(new WebViewClient()); w.setWebViewClient(new Empty());"
              " w.setWebViewClient(new Safe()); w.setWebViewClient(makeClient()); }")
    src += client("", "Empty") + client(
        "public boolean shouldOverrideUrlLoading(WebView v, String u) { return !u.startsWith(\"https://ok\"); }", "Safe")
    found = detect_sm06(make_app({"A.java": src}))
    assert confs(found) == [M, M]
    assert all(f.location.line == 2 for f in found)


# -- SM07 ------------------------------------------------------------------------

def test_sm07_calling_or_self_with_start_service():
    svc = act("int onStartCommand(Intent i, int f, int s) { checkCallingOrSelfPermission(\"p\"); return 0; }",
              "S", "Service")
    caller = act("void m() { startService(new Intent(this, S.class)); }")
    assert confs(detect_sm07(make_app({"S.java": svc, "A.java": caller}))) == [H]
    assert detect_sm07(make_app({"S.java": svc})) == []


def test_sm07_check_permission_with_binder_identity():
    src = """
        class Api extends Binder {
            Context ctx;
            void m() { int uid = Binder.getCallingUid(); ctx.checkPermission("p", 0, uid); }
        }
        class Other extends Service {
            void m() { checkPermission("p", 0, 0); }
        }
    """
    found = detect_sm07(make_app({"Api.java": src}))
    assert confs(found) == [H] and found[0].location.line == 4


def test_sm07_check_calling_permission_only():
    svc = act("void m() { checkCallingPermission(\"p\"); startService(i); }", "S", "Service")
    assert detect_sm07(make_app({"S.java": svc})) == []


# -- SM08 / SM09 -----------------------------------------------------------------

MATCH = act("static final UriMatcher M = new UriMatcher(-1); int m(Uri u) { return M.match(u); }", "P",
            "ContentProvider")


def provider(attrs="", path=True):
    inner = '<path-permission android:pathPrefix="/s" android:readPermission="p.R"/>' if path else ""
    return f'<provider android:name=".P" android:authorities="a"{attrs}>{inner}</provider>\n'


def test_sm08_conjunction():
    assert confs(detect_sm08(make_app({"P.java": MATCH}, body=provider()))) == [H]
    assert detect_sm08(make_app({}, body=provider())) == []
    assert detect_sm08(make_app({"P.java": MATCH}, body=provider(path=False))) == []


@pytest.mark.parametrize("attrs, expected", [
    (' android:permission="p.A"', [H]), (' android:readPermission="p.A"', [H]),
    (' android:writePermission="p.A"', [H]), ("", [M]),
])
def test_sm09(attrs, expected):
    assert confs(detect_sm09(make_app(body=provider(attrs)))) == expected
    assert detect_sm09(make_app(body=provider(attrs, path=False))) == []


# -- SM10 ------------------------------------------------------------------------

@pytest.mark.parametrize("stmt, expected", [
    ("registerReceiver(r, f);", [H]),
    ('registerReceiver(r, f, "perm.X", h);', []),
    ("registerReceiver(r, f, null, h);", [H]),
    ("registerReceiver(r, f, perm, h);", [L]),
    ("registerReceiver(r, f, 2);", [H]),
    ("LocalBroadcastManager.getInstance(this).registerReceiver(r, f);", []),
    ("registerReceiver(r, f, NONE, h);", [H]),
])
def test_sm10(stmt, expected):
    src = act(f"static final String NONE = null;\n void m(BroadcastReceiver r, IntentFilter f, String perm, Handler h) {{ {stmt} }}")
    assert confs(detect_sm10(make_app({"A.java": src}))) == expected


# -- SM11 ------------------------------------------------------------------------

@pytest.mark.parametrize("stmt, expected", [
    ('PendingIntent.getBroadcast(ctx, 0, new Intent("A"), 0);', [H]),
    ("PendingIntent.getActivity(ctx, 0, new Intent(ctx, B.class), 0);", []),
    ("PendingIntent.getService(ctx, 0, param, 0);", [L]),
    ('PendingIntent.getForegroundService(ctx, 0, new Intent("A").setComponent(cn), 0);', []),
])
def test_sm11(stmt, expected):
    src = act(f"void m(Context ctx, Intent param) {{ {stmt} }}")
    assert confs(detect_sm11(make_app({"A.java": src}))) == expected


def test_sm11_arrays_give_diagnostic():
    diags = []
    src = act("void m(Context c, Intent[] xs) { PendingIntent.getActivities(c, 0, xs, 0); }")
    assert detect_sm11(make_app({"A.java": src}), diags) == []
    assert [d.kind for d in diags] == ["not_analyzed"]


# -- SM12 ------------------------------------------------------------------------

def test_sm12_default_affinity_located_at_application():
    app = make_app(body='<activity android:name=".A"/>\n', app_attrs="")
    found = detect_sm12(app)
    assert confs(found) == [M]
    assert found[0].location == app.manifest.application_location


def test_sm12_empty_application_affinity():
    assert detect_sm12(make_app(body='<activity android:name=".A"/>\n')) == []


def test_sm12_mixed():
    app = make_app(body='<activity android:name=".A" android:taskAffinity=""/>\n'
                        '<activity android:name=".B"/>\n', app_attrs="")
    assert len(detect_sm12(app)) == 1
    app = make_app(body='<activity android:name=".A" android:taskAffinity="x.y"/>\n')
    found = detect_sm12(app)
    assert len(found) == 1 and found[0].location == app.manifest.components[0].location


# -- run_all and config ------------------------------------------------------------

def busy_app():
    src = act("""
        void m(Uri u, Intent p, BroadcastReceiver r, IntentFilter f) {
            grantUriPermission("x", u, 1);
            sendBroadcast(new Intent("a"));
            startActivity(p);
            sendStickyBroadcast(p);
            registerReceiver(r, f);
            PendingIntent.getBroadcast(this, 0, new Intent("b"), 0);
        }
    """)
    body = (SCHEMES.format("myapp") + provider(' android:permission="p"')
            + '<activity android:name=".B"/>\n')
    return make_app({"A.java": src, "P.java": MATCH}, body=body, app_attrs="",
                    top='<permission android:name="p.X"/>\n')


def test_run_all_is_sorted_union_of_detectors():
    app = busy_app()
    found = run_all(app, DetectorConfig())
    union = [f for det in DETECTORS.values() for f in det(app)]
    assert sorted(found, key=lambda f: f.sort_key()) == found
    assert sorted(union, key=lambda f: f.sort_key()) == found
    assert {f.smell for f in found} == {f"SM{i:02d}" for i in range(1, 13)} - {"SM06", "SM07"}


def test_run_all_filters():
    app = busy_app()
    only = run_all(app, DetectorConfig(enabled=frozenset({"SM10"})))
    assert {f.smell for f in only} == {"SM10"}
    high = run_all(app, DetectorConfig(min_confidence=Confidence.HIGH))
    assert all(f.confidence is Confidence.HIGH for f in high)
    no12 = run_all(app, DetectorConfig().with_overrides(disable=["SM12"]))
    assert "SM12" not in {f.smell for f in no12}


def test_run_all_empty_app():
    assert run_all(make_app()) == []


def test_detectors_are_pure_and_consistent():
    app = busy_app()
    before = dataclasses.replace(app)
    first = run_all(app)
    assert run_all(app) == first and app == before
    for f in first:
        assert f.threat_classes == map_threats(f.smell)


def test_manifest_smells_ignore_sources():
    app = busy_app()
    stripped = dataclasses.replace(app, units=())
    for det in (detect_sm03, detect_sm09, detect_sm12):
        assert det(app) == det(stripped)


def test_config_parsing(tmp_path):
    cfg = parse_detector_config("# comment\nenable=SM01, sm4 ,12\nmin_confidence = medium\nsm01_strict=TRUE\n")
    assert cfg.enabled == {"SM01", "SM04", "SM12"}
    assert cfg.min_confidence is Confidence.MEDIUM and cfg.sm01_strict
    assert parse_detector_config("disable=SM12").enabled == {f"SM{i:02d}" for i in range(1, 12)}
    path = tmp_path / "c.cfg"
    path.write_text("min_confidence=high\n")
    assert load_detector_config(path).min_confidence is Confidence.HIGH


@pytest.mark.parametrize("text", ["enable=SM13", "min_confidence=extreme", "sm01_strict=maybe",
                                  "colour=blue", "justtext"])
def test_config_errors(text):
    with pytest.raises(ConfigError):
        parse_detector_config(text)
