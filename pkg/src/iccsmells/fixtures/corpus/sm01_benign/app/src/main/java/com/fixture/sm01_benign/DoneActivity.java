package com.fixture.sm01_benign;

import android.app.Activity;
import android.content.Intent;
import android.net.Uri;

public class DoneActivity extends Activity {
    void finished(Uri uri) {
        revokeUriPermission(uri, Intent.FLAG_GRANT_READ_URI_PERMISSION);
    }
}
