package com.fixture.sm11_benign;

import android.app.Activity;
import android.app.PendingIntent;
import android.content.Intent;

public class AlarmActivity extends Activity {
    PendingIntent alarm() {
        return PendingIntent.getBroadcast(this, 0, new Intent(this, AlarmReceiver.class), 0);
    }

    PendingIntent open() {
        Intent open = new Intent("com.fixture.action.OPEN");
        open.setClass(this, AlarmActivity.class);
        return PendingIntent.getActivity(this, 1, open, PendingIntent.FLAG_IMMUTABLE);
    }
}
